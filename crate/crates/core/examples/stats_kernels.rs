//! Distribution tails, Shapiro-Wilk and the group regression on H values.

use discourse_dynamics::ingest::Discourse;
use discourse_dynamics::stats::{dist, group_h_regression, one_sample_t, shapiro_wilk};
use discourse_dynamics::synth::{rng, standard_normals};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("P(F(2, 100) > 4.0)   = {:.6}", dist::f_sf(4.0, 2.0, 100.0));
    println!("P(|t(30)| > 2.0)     = {:.6}", dist::t_two_sided(2.0, 30.0));
    println!("P(chi2(3) > 7.81)    = {:.6}", dist::chi2_sf(7.81, 3.0));

    let z = standard_normals(&mut rng(3), 200);
    let h_art: Vec<f64> = z[..100].iter().map(|e| 0.9 + 0.18 * e).collect();
    let h_ads: Vec<f64> = z[100..].iter().map(|e| 1.1 + 0.18 * e).collect();
    let sw = shapiro_wilk(&h_art)?;
    println!("Shapiro-Wilk on article H: W {:.4}, p {:.3}", sw.w, sw.p);
    let t = one_sample_t(&h_art, 0.5)?;
    println!("article H vs 0.5: t({}) = {:.2}, p {:.2e}", t.df, t.t, t.p);

    let h: Vec<f64> = h_art.iter().chain(&h_ads).copied().collect();
    let groups: Vec<Discourse> = (0..200)
        .map(|i| if i < 100 { Discourse::Article } else { Discourse::Advertisement })
        .collect();
    let g = group_h_regression(&h, &groups)?;
    println!("group effect {:.3} (se {:.3}), p {:.2e}", g.beta_group, g.se_beta, g.p);
    Ok(())
}

//! A reduced calibration battery.

use discourse_dynamics::validate::{
    format_table, granger_calibration, hurst_battery, integrated_noise_battery,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let outcomes = vec![
        hurst_battery(0.3, 4096, 10, 1)?,
        hurst_battery(0.7, 4096, 10, 2)?,
        integrated_noise_battery(4096, 10, 3)?,
        granger_calibration(2000, 400, 0.005, 4)?,
    ];
    print!("{}", format_table(&outcomes));
    Ok(())
}

/// Splits `text` into lowercase runs of Unicode letters.
///
/// Anything that is not a letter (digits, punctuation, hyphens, whitespace)
/// separates tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_punctuation() {
        assert_eq!(tokenize("Radio, Televisie!"), vec!["radio", "televisie"]);
    }

    #[test]
    fn empty_text() {
        assert!(tokenize("").is_empty());
        assert!(tokenize(" 1930 -- ...").is_empty());
    }

    #[test]
    fn hyphen_and_digits_separate() {
        assert_eq!(tokenize("fiets-fiets 1930"), vec!["fiets", "fiets"]);
        assert_eq!(tokenize("abc123def"), vec!["abc", "def"]);
    }

    #[test]
    fn unicode_letters() {
        assert_eq!(tokenize("Café RÉCLAME ĳzer"), vec!["café", "réclame", "ĳzer"]);
    }
}

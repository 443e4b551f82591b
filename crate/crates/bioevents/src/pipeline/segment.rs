//! Frozen rule-based sentence splitter and tokenizer for raw biography
//! text. Group statistics depend on sentence counts, so the rules are
//! versioned and the version is recorded in every run report; any rule
//! change must bump [`SPLITTER_VERSION`].

pub const SPLITTER_VERSION: &str = "rule-splitter/1";

const ABBREVIATIONS: &[&str] = &[
    "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "St.", "Jr.", "Sr.", "vs.", "etc.", "e.g.", "i.e.",
    "cf.", "No.", "Vol.", "pp.", "ca.", "approx.",
];

fn ends_with_abbreviation(text: &str) -> bool {
    ABBREVIATIONS
        .iter()
        .any(|a| text.ends_with(a))
        // single capital initial like "J."
        || text
            .rsplit(char::is_whitespace)
            .next()
            .map_or(false, |w| w.len() == 2 && w.ends_with('.') && w.chars().next().unwrap().is_uppercase())
}

/// Split plain text into sentences. A boundary is a run of `.`, `!` or `?`
/// followed by whitespace and an uppercase letter, an opening quote or a
/// digit, unless the text so far ends in a known abbreviation. Newlines
/// ("\n\n") always split.
pub fn split_sentences(text: &str) -> Vec<String> {
    let mut sentences = Vec::new();
    let mut current = String::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;

    let flush = |current: &mut String, sentences: &mut Vec<String>| {
        let trimmed = current.trim();
        if !trimmed.is_empty() {
            sentences.push(trimmed.to_string());
        }
        current.clear();
    };

    while i < chars.len() {
        let c = chars[i];
        current.push(c);

        if c == '\n' && chars.get(i + 1) == Some(&'\n') {
            flush(&mut current, &mut sentences);
            i += 2;
            continue;
        }

        if matches!(c, '.' | '!' | '?') {
            // absorb the full terminator run plus closing quotes
            let mut j = i + 1;
            while j < chars.len() && matches!(chars[j], '.' | '!' | '?' | '"' | '\'' | ')') {
                current.push(chars[j]);
                j += 1;
            }
            let mut k = j;
            while k < chars.len() && chars[k].is_whitespace() {
                k += 1;
            }
            let next_opens = chars
                .get(k)
                .map_or(false, |&n| n.is_uppercase() || n.is_ascii_digit() || n == '"' || n == '\'');
            if k > j && next_opens && !ends_with_abbreviation(current.trim_end()) {
                flush(&mut current, &mut sentences);
            }
            i = j;
            continue;
        }
        i += 1;
    }
    flush(&mut current, &mut sentences);
    sentences
}

/// Whitespace tokenization with leading/trailing punctuation split off as
/// separate tokens. Deterministic; versioned together with the splitter.
pub fn tokenize(sentence: &str) -> Vec<String> {
    let mut out = Vec::new();
    for word in sentence.split_whitespace() {
        let chars: Vec<char> = word.chars().collect();
        let mut start = 0;
        let mut end = chars.len();
        let is_punct = |c: char| !c.is_alphanumeric() && c != '-' && c != '\'';
        while start < end && is_punct(chars[start]) {
            start += 1;
        }
        while end > start && is_punct(chars[end - 1]) {
            end -= 1;
        }
        for &c in &chars[..start] {
            out.push(c.to_string());
        }
        if start < end {
            out.push(chars[start..end].iter().collect());
        }
        for &c in &chars[end..] {
            out.push(c.to_string());
        }
    }
    out
}

/// Tokens of a whole text with sentence indices, in document order.
pub fn segment(text: &str) -> Vec<crate::model::Token> {
    let mut tokens = Vec::new();
    for (s, sentence) in split_sentences(text).iter().enumerate() {
        for word in tokenize(sentence) {
            let index = tokens.len();
            tokens.push(crate::model::Token::new(index, word, s));
        }
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_on_terminator_before_uppercase() {
        let s = split_sentences("She wrote novels. Her first book appeared in 1958.");
        assert_eq!(s.len(), 2);
        assert_eq!(s[0], "She wrote novels.");
    }

    #[test]
    fn abbreviations_do_not_split() {
        let s = split_sentences("Dr. Okafor taught at St. Mary's College. She retired.");
        assert_eq!(s.len(), 2);
        assert!(s[0].starts_with("Dr. Okafor"));
    }

    #[test]
    fn initials_do_not_split() {
        let s = split_sentences("W. E. B. Du Bois wrote essays. They mattered.");
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn tokenize_splits_punctuation() {
        assert_eq!(
            tokenize("She wrote \"Sozaboy\", then left."),
            vec!["She", "wrote", "\"", "Sozaboy", "\"", ",", "then", "left", "."]
        );
    }

    #[test]
    fn segment_assigns_sentence_indices() {
        let toks = segment("One here. Two here.");
        assert_eq!(toks.len(), 6);
        assert_eq!(toks[2].sentence_index, 0);
        assert_eq!(toks[3].sentence_index, 1);
        assert_eq!(toks[5].text, ".");
    }

    #[test]
    fn segmentation_is_deterministic() {
        let text = "Mr. Smith went to Washington! He stayed. Did he? Yes.";
        assert_eq!(split_sentences(text), split_sentences(text));
        assert_eq!(split_sentences(text).len(), 4);
    }
}

use std::sync::OnceLock;

use regex::Regex;

use crate::{CoreError, PartialSolution, Step};

/// Pathological generations are truncated to this many characters per step.
pub const DEFAULT_MAX_STEP_LEN: usize = 2048;

fn numeric_token_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"[+-]?\d+(?:\.\d+)?(?:/\d+)?").expect("static regex"))
}

/// Split a solution into steps on line breaks. Blank lines are dropped and
/// surviving lines are trimmed of trailing carriage returns.
pub fn split_into_steps(solution: &str) -> Vec<Step> {
    split_into_steps_with(solution, DEFAULT_MAX_STEP_LEN)
}

/// [`split_into_steps`] with an explicit per-step length cap.
pub fn split_into_steps_with(solution: &str, max_step_len: usize) -> Vec<Step> {
    solution
        .lines()
        .map(str::trim_end)
        .filter(|line| !line.trim().is_empty())
        .enumerate()
        .map(|(index, line)| {
            let mut text = line.to_string();
            if text.len() > max_step_len {
                let mut cut = max_step_len;
                while !text.is_char_boundary(cut) {
                    cut -= 1;
                }
                text.truncate(cut);
            }
            Step { text, index }
        })
        .collect()
}

/// Join step texts with line breaks; inverse of [`split_into_steps`] for
/// step lists that contain no blank lines.
pub fn join_steps(steps: &[Step]) -> String {
    steps
        .iter()
        .map(|s| s.text.as_str())
        .collect::<Vec<_>>()
        .join("\n")
}

/// Extract the final answer of a solution: the content of the last
/// `\boxed{...}` marker if present, otherwise the last numeric token of the
/// last step, otherwise absent.
pub fn extract_final_answer(solution: &str) -> Option<String> {
    if let Some(start) = solution.rfind("\\boxed{") {
        let rest = &solution[start + "\\boxed{".len()..];
        if let Some(end) = rest.find('}') {
            let content = rest[..end].trim();
            if !content.is_empty() {
                return Some(content.to_string());
            }
        }
    }
    let last_line = solution
        .lines()
        .filter(|l| !l.trim().is_empty())
        .next_back()?;
    numeric_token_re()
        .find_iter(last_line)
        .last()
        .map(|m| m.as_str().to_string())
}

/// Extend a prefix with one step. The step's index must equal the current
/// prefix length; the input is left unmodified.
pub fn concat_prefix(prefix: &PartialSolution, step: &Step) -> Result<PartialSolution, CoreError> {
    if step.index != prefix.steps.len() {
        return Err(CoreError::ContractViolation(format!(
            "step index {} does not extend prefix of length {}",
            step.index,
            prefix.steps.len()
        )));
    }
    let mut extended = prefix.clone();
    extended.steps.push(step.clone());
    Ok(extended)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::Problem;

    fn texts(steps: &[Step]) -> Vec<&str> {
        steps.iter().map(|s| s.text.as_str()).collect()
    }

    #[test]
    fn splits_on_line_breaks() {
        let steps = split_into_steps("a\nb\nc");
        assert_eq!(texts(&steps), ["a", "b", "c"]);
        assert_eq!(steps.iter().map(|s| s.index).collect::<Vec<_>>(), [0, 1, 2]);
    }

    #[test]
    fn empty_input_yields_no_steps() {
        assert!(split_into_steps("").is_empty());
    }

    #[test]
    fn blank_lines_are_collapsed() {
        let steps = split_into_steps("x\n\n\ny");
        assert_eq!(texts(&steps), ["x", "y"]);
    }

    #[test]
    fn long_steps_are_truncated() {
        let text = "a".repeat(5000);
        let steps = split_into_steps(&text);
        assert_eq!(steps[0].text.len(), DEFAULT_MAX_STEP_LEN);
        let steps = split_into_steps_with(&text, 10);
        assert_eq!(steps[0].text.len(), 10);
    }

    #[test]
    fn boxed_answer_wins() {
        assert_eq!(
            extract_final_answer("some work\nthe answer is \\boxed{19}."),
            Some("19".to_string())
        );
    }

    #[test]
    fn falls_back_to_last_numeric_token() {
        assert_eq!(
            extract_final_answer("x = 4 or x = -4"),
            Some("-4".to_string())
        );
    }

    #[test]
    fn absent_when_nothing_extractable() {
        assert_eq!(extract_final_answer("no numbers here"), None);
        assert_eq!(extract_final_answer(""), None);
    }

    #[test]
    fn concat_extends_and_checks_index() {
        let problem = Arc::new(Problem::new("p", "stmt", "1"));
        let empty = PartialSolution::new(problem);
        let one = concat_prefix(&empty, &Step::new("first", 0)).unwrap();
        assert_eq!(one.steps.len(), 1);
        assert!(empty.steps.is_empty(), "input must stay unmodified");
        let err = concat_prefix(&one, &Step::new("bad", 0));
        assert!(err.is_err());
        let two = concat_prefix(&one, &Step::new("second", 1)).unwrap();
        assert_eq!(two.steps.len(), 2);
    }
}

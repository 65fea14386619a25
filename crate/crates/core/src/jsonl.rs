use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{de::DeserializeOwned, Serialize};

use crate::CoreError;

/// Write records as one JSON object per line, UTF-8.
pub fn write_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<(), CoreError> {
    let mut out = BufWriter::new(File::create(path)?);
    for rec in records {
        serde_json::to_writer(&mut out, rec)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Read a JSONL file produced by [`write_jsonl`]. Blank lines are skipped.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, CoreError> {
    let reader = BufReader::new(File::open(path)?);
    let mut records = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line)?);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{LabeledStep, Provenance};

    #[test]
    fn labeled_steps_round_trip_exactly() {
        let dir = std::env::temp_dir().join(format!("stepflow-jsonl-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("recs.jsonl");
        let recs = vec![LabeledStep {
            problem_id: "p1".into(),
            question: "q".into(),
            prefix: "a\nb".into(),
            step: "c".into(),
            value: 0.3333333333333333,
            provenance: Provenance::RolloutReuse,
        }];
        write_jsonl(&path, &recs).unwrap();
        let back: Vec<LabeledStep> = read_jsonl(&path).unwrap();
        assert_eq!(back, recs);
        std::fs::remove_dir_all(&dir).ok();
    }
}

//! Result records shared by the command-line front end and tests.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::cnf::{CnfFormula, Lit, PartialAssignment};
use crate::color_search::enumerate_colorings;
use crate::config::SearchConfig;
use crate::error::Result;
use crate::graph::{Graph, PartialColoring};
use crate::sat_search::enumerate_proper;

/// How far model counting goes before giving up on an exact count.
pub const COUNT_HINT_CAP: usize = 1000;

/// One answered question.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub question: String,
    /// Yes or no for decision forms; absent for optimization forms.
    pub answer: Option<bool>,
    pub min_size: Option<usize>,
    /// Signed literals for assignments, `[vertex, color]` pairs (1-based
    /// vertices) for colorings.
    pub witness: Option<Value>,
    /// The member of the family the witness defines, for family questions.
    pub anchor: Option<Value>,
    /// `"<n>"` when the family has `n` members, `">=<cap>"` when counting
    /// stopped early.
    pub model_count_hint: Option<String>,
}

impl ResultRecord {
    pub fn new(question: impl Into<String>) -> Self {
        ResultRecord {
            question: question.into(),
            answer: None,
            min_size: None,
            witness: None,
            anchor: None,
            model_count_hint: None,
        }
    }

    pub fn to_record(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("question: {}\n", self.question);
        if let Some(a) = self.answer {
            let _ = writeln!(out, "answer: {}", if a { "yes" } else { "no" });
        }
        if let Some(m) = self.min_size {
            let _ = writeln!(out, "min_size: {m}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {w}");
        }
        if let Some(a) = &self.anchor {
            let _ = writeln!(out, "anchor: {a}");
        }
        if let Some(h) = &self.model_count_hint {
            let _ = writeln!(out, "model_count_hint: {h}");
        }
        out
    }
}

pub fn assignment_value(a: &PartialAssignment) -> Value {
    Value::from(a.literals().into_iter().map(Lit::to_dimacs).collect::<Vec<i32>>())
}

pub fn coloring_value(p: &PartialColoring) -> Value {
    Value::from(p.iter().map(|(v, c)| Value::from(vec![v + 1, c])).collect::<Vec<_>>())
}

fn hint(count: usize) -> String {
    if count >= COUNT_HINT_CAP {
        format!(">={COUNT_HINT_CAP}")
    } else {
        count.to_string()
    }
}

/// Number of proper assignments, capped at [`COUNT_HINT_CAP`].
pub fn sat_count_hint(formula: &CnfFormula) -> Result<String> {
    Ok(hint(enumerate_proper(formula, &PartialAssignment::new(), COUNT_HINT_CAP)?.len()))
}

/// Number of optimal colorings, capped at [`COUNT_HINT_CAP`].
pub fn coloring_count_hint(g: &Graph, cfg: &SearchConfig) -> Result<String> {
    Ok(hint(enumerate_colorings(g, &PartialColoring::new(), COUNT_HINT_CAP, cfg)?.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_record_forms() {
        let mut r = ResultRecord::new("sat min");
        r.min_size = Some(1);
        r.witness = Some(assignment_value(&PartialAssignment::from_pairs([(1, true), (3, false)])));
        r.model_count_hint = Some("2".into());
        assert_eq!(r.to_text(), "question: sat min\nmin_size: 1\nwitness: [1,-3]\nmodel_count_hint: 2\n");
        assert_eq!(
            r.to_record(),
            r#"{"question":"sat min","answer":null,"min_size":1,"witness":[1,-3],"anchor":null,"model_count_hint":"2"}"#
        );
    }

    #[test]
    fn count_hints() {
        let f = CnfFormula::from_ints(2, &[&[1, 2]]).unwrap();
        assert_eq!(sat_count_hint(&f).unwrap(), "3");
        let free = CnfFormula::new(11, vec![]).unwrap();
        assert_eq!(sat_count_hint(&free).unwrap(), ">=1000");
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(coloring_count_hint(&tri, &SearchConfig::default()).unwrap(), "6");
        assert_eq!(
            coloring_value(&PartialColoring::from_pairs([(0, 2)])).to_string(),
            "[[1,2]]"
        );
    }
}

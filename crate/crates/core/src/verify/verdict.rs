use std::fmt;

use serde_json::{json, Map, Value};

use crate::freeterm::var_name;
use crate::models::ModelValue;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds {
        samples: usize,
        plan: String,
        /// The plan is large enough to imply the identity on the whole carrier.
        proof_grade: bool,
    },
    Fails {
        witness: Vec<ModelValue>,
        value: ModelValue,
        /// 1-based position of the witness in plan order.
        sample: usize,
    },
}

impl Verdict {
    pub fn holds(samples: usize, plan: impl Into<String>, proof_grade: bool) -> Self {
        Verdict::Holds { samples, plan: plan.into(), proof_grade }
    }

    pub fn fails(witness: Vec<ModelValue>, value: ModelValue, sample: usize) -> Self {
        debug_assert!(!value.is_zero());
        Verdict::Fails { witness, value, sample }
    }

    pub fn holds_flag(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn witness(&self) -> Option<&[ModelValue]> {
        match self {
            Verdict::Fails { witness, .. } => Some(witness),
            Verdict::Holds { .. } => None,
        }
    }

    pub fn value(&self) -> Option<&ModelValue> {
        match self {
            Verdict::Fails { value, .. } => Some(value),
            Verdict::Holds { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Verdict::Holds { samples, plan, proof_grade } => json!({
                "status": "holds",
                "samples": samples,
                "plan": plan,
                "evidence": if *proof_grade { "proof" } else { "sampled" },
            }),
            Verdict::Fails { witness, value, sample } => {
                let w: Map<String, Value> =
                    witness.iter().enumerate().map(|(i, v)| (var_name(i as u32 + 1), Value::String(v.to_string()))).collect();
                json!({ "status": "fails", "samples": sample, "witness": w, "value": value.to_string() })
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds { samples, plan, proof_grade: true } => write!(f, "holds on {samples} samples ({plan}, proof-grade grid)"),
            Verdict::Holds { samples, plan, proof_grade: false } => {
                write!(f, "no violation found (evidence): {samples} samples ({plan})")
            }
            Verdict::Fails { witness, value, sample } => {
                let w: Vec<String> = witness.iter().enumerate().map(|(i, v)| format!("{} = {v}", var_name(i as u32 + 1))).collect();
                write!(f, "fails at sample {sample}: {} gives {value}", w.join(", "))
            }
        }
    }
}

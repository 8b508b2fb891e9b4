//! Loading a scenario file and running its checks, as the `prelie check`
//! command does.

use prelie::scenario::{corpus_ids, run_corpus, run_scenario_str};
use prelie::Result;

const SRC: &str = r#"{
  "id": "a2-pseudo-hessian",
  "algebras": { "g": "A2" },
  "parameters": ["a", "b"],
  "nonzero": ["a"],
  "instantiation": { "a": "1", "b": "2" },
  "maps": { "B": [["0", "a"], ["a", "b"]], "r": { "inverse": "B" } },
  "checks": [
    { "op": "check_pseudo_hessian", "algebra": "g", "B": "B", "expect": true },
    { "op": "check_s_matrix", "algebra": "g", "r": "r", "expect": true }
  ]
}"#;

fn main() -> Result<()> {
    println!("{}", run_scenario_str(SRC, None)?);
    println!("corpus: {}", corpus_ids().join(", "));
    println!("{}", run_corpus(Some("a3a-kvb"), Some(8))?);
    Ok(())
}

//! Runs the full audit over the random corpus and tallies failures by check.
//!
//! Usage: `cargo run --release -p ntsp-core --example audit_sweep -- 20000`

use std::collections::BTreeMap;

use ntsp_core::audit::{audit_instance, check_two_paths, corpus_instance};
use ntsp_core::oracle::OracleInstance;

fn main() {
    let count: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1000);
    let mut bad: BTreeMap<String, usize> = BTreeMap::new();
    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    let mut flows = 0;
    for zp in [0.0, 0.3, 0.6] {
        for seed in 0..count {
            let (g, q) = corpus_instance(seed, zp);
            let rep = audit_instance(&g, q).expect("corpus instances are small");
            let o = OracleInstance::new(&g, q).expect("corpus instances are small");
            flows += rep.flows.clone().unwrap_or(0);
            for k in &rep.kinds {
                *kinds.entry(format!("{k:?}")).or_default() += 1;
            }
            let mut errs: Vec<(String, String)> = rep
                .structure
                .0
                .iter()
                .map(|(n, m)| (n.to_string(), m.clone()))
                .collect();
            let extra = [
                ("result", rep.result_check.clone()),
                ("flows", rep.flows.clone().map(|_| ())),
                ("two-paths", check_two_paths(&g, q, &o, 50)),
            ];
            for (k, r) in extra {
                if let Err(e) = r {
                    errs.push((k.into(), e));
                }
            }
            for (k, e) in errs {
                let c = bad.entry(k.clone()).or_default();
                *c += 1;
                if *c == 1 {
                    println!("{k} seed {seed} zp {zp} s={} t={}: {e}\n{}", q.s, q.t, g.to_text());
                }
            }
        }
    }
    println!("flow networks {flows}, pair kinds {kinds:?}, failures {bad:?}");
}

//! Run reports: the comment header printed above the output basis and the
//! `key value` stats file.

use std::fmt::Write as _;
use std::time::Duration;

use nondeg::nondeg::IterationStats;
use nondeg::sig::EngineStats;
use nondeg::OpCounts;
use serde_json::json;

pub struct Report {
    pub algorithm: String,
    pub mode: String,
    pub seed: u64,
    pub order: String,
    pub inputs: usize,
    pub nvars: usize,
    pub generators: usize,
    pub ops: OpCounts,
    /// Op counts of sgb on the same input.
    pub baseline: Option<OpCounts>,
    pub wall: Duration,
    pub engine: Option<EngineStats>,
    pub iterations: Vec<IterationStats>,
    /// Flat engines: syzygies recorded per input index.
    pub syzygies: Option<Vec<usize>>,
}

impl Report {
    /// Comment lines for the printed system. Nothing time-dependent goes
    /// here so the output is reproducible byte for byte.
    pub fn header(&self) -> Vec<String> {
        vec![
            format!("algorithm {}", self.algorithm),
            format!("mode {}", self.mode),
            format!("seed {}", self.seed),
            format!("order {}", self.order),
            format!("generators {}", self.generators),
        ]
    }

    pub fn ratio(&self) -> Option<f64> {
        let base = self.baseline?.total();
        (base > 0).then(|| self.ops.total() as f64 / base as f64)
    }

    pub fn stats_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(s, "{k} {v}");
        };
        kv("algorithm", &self.algorithm);
        kv("mode", &self.mode);
        kv("seed", &self.seed);
        kv("order", &self.order);
        kv("nvars", &self.nvars);
        kv("input_polys", &self.inputs);
        kv("output_generators", &self.generators);
        kv("ops_mul", &self.ops.mul);
        kv("ops_addsub", &self.ops.addsub);
        kv("ops_inv", &self.ops.inv);
        kv("ops_total", &self.ops.total());
        match self.baseline {
            Some(b) => kv("baseline_ops_total", &b.total()),
            None => kv("baseline_ops_total", &"-"),
        }
        match self.ratio() {
            Some(r) => kv("ratio", &format!("{r:.6}")),
            None => kv("ratio", &"-"),
        }
        kv("wall_ms", &format!("{:.3}", self.wall.as_secs_f64() * 1e3));
        if let Some(e) = &self.engine {
            kv("pairs_created", &e.pairs_created);
            kv("pairs_selected", &e.pairs_selected);
            kv("seeds", &e.seeds);
            kv("rewritten_singular", &e.rewritten_singular);
            kv("rewritten_syzygy", &e.rewritten_syzygy);
            kv("rewritten_koszul", &e.rewritten_koszul);
            kv("reductions", &e.reductions);
            kv("zero_reductions", &e.zero_reductions);
            kv("reduction_steps", &e.reduction_steps);
        }
        for (k, it) in self.iterations.iter().enumerate() {
            let _ = writeln!(
                s,
                "iteration {} syzygies {} leaves {} cleaning {} nodes_inserted {} ops_total {}",
                k + 1,
                it.syzygies,
                it.leaves,
                it.cleaning,
                it.nodes_inserted,
                it.ops.total()
            );
        }
        if let Some(syz) = &self.syzygies {
            for (i, n) in syz.iter().enumerate() {
                let _ = writeln!(s, "syzygies_at {i} {n}");
            }
        }
        let _ = writeln!(s, "summary {}", self.summary());
        s
    }

    fn summary(&self) -> serde_json::Value {
        json!({
            "algorithm": self.algorithm,
            "mode": self.mode,
            "seed": self.seed,
            "order": self.order,
            "nvars": self.nvars,
            "input_polys": self.inputs,
            "output_generators": self.generators,
            "ops": {
                "mul": self.ops.mul,
                "addsub": self.ops.addsub,
                "inv": self.ops.inv,
                "total": self.ops.total(),
            },
            "baseline_ops_total": self.baseline.map(|b| b.total()),
            "ratio": self.ratio(),
            "wall_ms": self.wall.as_secs_f64() * 1e3,
            "engine": self.engine.as_ref().map(|e| json!({
                "pairs_created": e.pairs_created,
                "pairs_selected": e.pairs_selected,
                "seeds": e.seeds,
                "rewritten": e.rewritten(),
                "reductions": e.reductions,
                "zero_reductions": e.zero_reductions,
            })),
            "iterations": self.iterations.iter().map(|it| json!({
                "syzygies": it.syzygies,
                "leaves": it.leaves,
                "cleaning": it.cleaning,
                "nodes_inserted": it.nodes_inserted,
                "ops_total": it.ops.total(),
            })).collect::<Vec<_>>(),
        })
    }
}

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use sandpile_core::arith::{gcd, is_prime, prime_power};
use sandpile_core::circulant::*;
use sandpile_core::closed_form::*;
use sandpile_core::{smith_group, AbelianGroup, Digraph};

use crate::report::group;

#[derive(Debug, Clone, Copy)]
enum Task {
    Family { n: u64, d: i64 },
    Generators { m: u64, d: i64 },
    Coprime { m: u64, q: u64 },
    Prime { n: u64, p: u64 },
}

/// Result of one task: number of checks run and the failures found.
struct Outcome {
    checks: u64,
    failures: Vec<Value>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn groups(&mut self, check: &str, at: Value, formula: &AbelianGroup, oracle: &AbelianGroup) {
        self.checks += 1;
        if formula != oracle {
            self.failures.push(json!({
                "check": check, "at": at, "formula": group(formula), "oracle": group(oracle),
            }));
        }
    }

    fn numbers(&mut self, check: &str, at: Value, formula: &BigUint, oracle: &BigUint) {
        self.checks += 1;
        if formula != oracle {
            self.failures.push(json!({
                "check": check, "at": at,
                "formula": formula.to_string(), "oracle": oracle.to_string(),
            }));
        }
    }

    fn holds(&mut self, check: &str, at: Value, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(json!({ "check": check, "at": at }));
        }
    }

    fn error(&mut self, check: &str, at: Value, e: impl ToString) {
        self.checks += 1;
        self.failures.push(json!({ "check": check, "at": at, "error": e.to_string() }));
    }
}

pub struct Sweep {
    pub n_max: u64,
    pub d_max: u64,
    pub q_max: u64,
    pub cap: u64,
}

pub struct Summary {
    pub checks: u64,
    pub failures: Vec<Value>,
    pub tasks: usize,
}

impl Sweep {
    fn tasks(&self) -> Vec<Task> {
        let mut tasks = Vec::new();
        let ds: Vec<i64> = (2..=self.d_max as i64).flat_map(|d| [d, -d]).collect();
        for &d in &ds {
            for n in 2..=self.n_max {
                tasks.push(Task::Family { n, d });
            }
            for m in 1..=self.n_max {
                if gcd(m, d.unsigned_abs()) == 1 {
                    tasks.push(Task::Generators { m, d });
                }
            }
        }
        for q in 2..=self.q_max {
            let Ok((p, _)) = prime_power(q) else { continue };
            for m in (1..=self.n_max).filter(|m| m % p != 0) {
                tasks.push(Task::Coprime { m, q });
            }
            if is_prime(q) {
                for n in 1..=self.n_max {
                    tasks.push(Task::Prime { n, p: q });
                }
            }
        }
        tasks
    }

    pub fn run(&self, progress: bool) -> Summary {
        let tasks = self.tasks();
        if progress {
            eprintln!("verify: {} tasks", tasks.len());
        }
        let outcomes: Vec<Outcome> = tasks.par_iter().map(|t| self.run_task(*t)).collect();
        Summary {
            checks: outcomes.iter().map(|o| o.checks).sum(),
            failures: outcomes.into_iter().flat_map(|o| o.failures).collect(),
            tasks: tasks.len(),
        }
    }

    fn run_task(&self, task: Task) -> Outcome {
        let mut out = Outcome::new();
        match task {
            Task::Family { n, d } => family(&mut out, n, d),
            Task::Generators { m, d } => generators(&mut out, m, d),
            Task::Coprime { m, q } => coprime(&mut out, m, q, self.cap),
            Task::Prime { n, p } => prime(&mut out, n, p),
        }
        out
    }
}

fn family(out: &mut Outcome, n: u64, d: i64) {
    let at = json!({ "n": n, "d": d });
    let graph = if d > 0 {
        Digraph::de_bruijn(n, d as u64)
    } else {
        Digraph::kautz(n, d.unsigned_abs())
    };
    let (Ok(graph), Ok(s), Ok(sigma), Ok(parts)) = (
        graph,
        sandpile_group(n, d),
        sand_dune_group(n, d),
        kernel_parts(n, d),
    ) else {
        return out.error("construction", at, "failed to build graph or closed forms");
    };
    match graph.sandpile_group_snf(0) {
        Ok(snf) => out.groups("sandpile_vs_snf", at.clone(), &s, &snf),
        Err(e) => out.error("sandpile_vs_snf", at.clone(), e),
    }
    match sigma_relation_matrix(n, d) {
        Ok(rel) => {
            let g = smith_group(&rel);
            out.holds("sand_dune_finite", at.clone(), g.free_rank == 0);
            out.groups("sand_dune_vs_snf", at.clone(), &sigma, &g.torsion);
        }
        Err(e) => out.error("sand_dune_vs_snf", at.clone(), e),
    }
    out.numbers("index_identity", at.clone(), &sigma.order(), &(s.order() * n));
    match graph.spanning_tree_count(0) {
        Ok(t) => out.numbers("matrix_tree", at.clone(), &s.order(), &t),
        Err(e) => out.error("matrix_tree", at.clone(), e),
    }
    if let Ok(seq) = d_sequence(n, d) {
        let m = seq.m();
        if let (Ok(sm), Ok(sigma_m)) = (sandpile_group(m, d), sand_dune_group(m, d)) {
            out.groups("crt_sandpile", at.clone(), &s, &parts.s0.direct_sum(&sm));
            out.groups("crt_sand_dune", at, &sigma, &parts.sigma0.direct_sum(&sigma_m));
        }
    }
}

fn generators(out: &mut Outcome, m: u64, d: i64) {
    let at = json!({ "m": m, "d": d });
    let (Ok(gens), Ok(s)) = (sandpile_generators(m, d), sandpile_group(m, d)) else {
        return out.error("generators", at, "construction failed");
    };
    let mut product = BigUint::from(1u32);
    for (v, g) in &gens {
        let here = json!({ "m": m, "d": d, "v": v });
        out.holds("generator_membership", here.clone(), membership_in_sandpile(&g.element));
        out.numbers("generator_order", here, &g.claimed_order, &g.element.order());
        product *= &g.claimed_order;
    }
    out.numbers("generator_product", at, &product, &s.order());
}

fn coprime(out: &mut Outcome, m: u64, q: u64, cap: u64) {
    let at = json!({ "m": m, "q": q });
    let d = q as i64;
    let (Ok(c), Ok(cq), Ok(sigma), Ok(s)) = (
        circulant_group_coprime(m, q),
        circulant_quotient_coprime(m, q),
        sand_dune_group(m, d),
        sandpile_group(m, d),
    ) else {
        return out.error("circulant_coprime", at, "construction failed");
    };
    out.groups("circulant_vs_sand_dune", at.clone(), &c, &sigma);
    out.groups("circulant_quotient_vs_sandpile", at.clone(), &cq, &s);
    if (q as u128).saturating_pow(m as u32) <= cap as u128 {
        match unit_group_brute(m, q, true, false, cap) {
            Ok(b) => out.groups("circulant_vs_brute", at.clone(), &c, &b),
            Err(e) => out.error("circulant_vs_brute", at.clone(), e),
        }
        match unit_group_brute(m, q, true, true, cap) {
            Ok(b) => out.groups("circulant_quotient_vs_brute", at, &cq, &b),
            Err(e) => out.error("circulant_quotient_vs_brute", at, e),
        }
    }
}

fn prime(out: &mut Outcome, n: u64, p: u64) {
    let at = json!({ "n": n, "p": p });
    let (Ok(tq), Ok(s), Ok(tower), Ok(counted), Ok(cq)) = (
        circulant_quotient_prime(n, p),
        sandpile_group(n, p as i64),
        circulant_star_group_prime(n, p),
        circulant_star_group(n, p),
        circulant_quotient(n, p),
    ) else {
        return out.error("circulant_prime", at, "construction failed");
    };
    out.groups("prime_quotient_vs_sandpile", at.clone(), &tq, &s);
    out.groups("tower_vs_torsion_counts", at.clone(), &tower, &counted);
    out.groups("quotient_tower_vs_torsion_counts", at, &tq, &cq);
}

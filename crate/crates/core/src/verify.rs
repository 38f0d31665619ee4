//! Single-instance and batch verification of the rank-nullity statements:
//! the general inequality, the E_k != O_k criterion for zero-diagonal
//! {0,+-1} symmetric matrices, the nonnegative-symmetric / balanced /
//! uniform-parity / positive-semidefinite identities, and the bound
//! rank(A) <= 2 rho_per(A).
//!
//! Class flags are always recomputed from the instance; generator metadata
//! is never trusted. A failed applicable check is a bug by definition and
//! aborts batch runs with a serialized reproducer.

use serde::Serialize;

use crate::error::{Error, Result, Violation};
use crate::gen::{generate, GenConfig};
use crate::graph::{CycleParity, SignedGraph};
use crate::io::format_dense_matrix;
use crate::matrix::ExactMatrix;
use crate::poly::perm_nullity;
use crate::rank::perm_rank_exact;
use crate::sachs::ek_ok;
use crate::scalar::format_exact;

/// Exactness cap for full verification; the mixed-sign rank search is the
/// binding constraint.
pub const MAX_VERIFY_N: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct ClassFlags {
    pub nonnegative: bool,
    pub symmetric: bool,
    pub psd: bool,
    /// Symmetric, zero diagonal, entries in {0,+-1}: the signed-graph class.
    pub zero_pm1: bool,
    pub balanced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniform_parity_class: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    /// 0-based row indices of the rank witness.
    pub rows: Vec<usize>,
    /// 0-based column indices of the rank witness.
    pub cols: Vec<usize>,
    /// Exact permanent of the witness submatrix, as a decimal string.
    pub permanent: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremCheck {
    pub name: &'static str,
    pub applicable: bool,
    pub holds: bool,
}

/// Everything `verify` establishes about one matrix. Field names follow the
/// documented JSON schema.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub rho: usize,
    pub eta: usize,
    pub sum: usize,
    pub classes: ClassFlags,
    pub identity: bool,
    pub inequality: bool,
    pub yu_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ek: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ok: Option<String>,
    pub witness: WitnessReport,
    pub theorems: Vec<TheoremCheck>,
}

impl VerifyReport {
    /// First applicable theorem whose check failed, if any. Such a failure
    /// contradicts a proved statement and therefore means a bug.
    pub fn first_violation(&self) -> Option<&TheoremCheck> {
        self.theorems.iter().find(|t| t.applicable && !t.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Computes rho, eta, class flags, E_k/O_k where defined, and every
/// applicable theorem check for one square matrix.
pub fn verify(a: &ExactMatrix) -> Result<VerifyReport> {
    if !a.is_square() {
        return Err(Error::input("verification requires a square matrix"));
    }
    let n = a.rows();
    if n > MAX_VERIFY_N {
        return Err(Error::Resource(format!(
            "verification cap is n <= {MAX_VERIFY_N}, got {n}"
        )));
    }

    let rank_result = perm_rank_exact(a, false)?;
    let rho = rank_result.rank;
    let eta = perm_nullity(a)?;
    let sum = rho + eta;

    let symmetric = a.is_symmetric();
    let nonnegative = a.is_nonnegative();
    let psd = symmetric && a.psd_check()?;
    let zero_pm1 = symmetric && a.entries_zero_pm1() && a.diagonal_is_zero();

    let graph = if zero_pm1 {
        Some(SignedGraph::from_matrix(a)?)
    } else {
        None
    };
    let balanced = graph.as_ref().is_some_and(|g| g.is_balanced());
    let parity: Option<CycleParity> = match &graph {
        Some(g) => Some(g.cycle_parity_class()?),
        None => None,
    };
    let ek_ok_result = match &graph {
        Some(g) => Some(ek_ok(g, rho)?),
        None => None,
    };

    let identity = sum == n;
    let inequality = sum >= n;
    let yu_bound = a.rank_exact() <= 2 * rho;

    let mut theorems = Vec::new();
    theorems.push(TheoremCheck {
        name: "general_inequality",
        applicable: true,
        holds: inequality,
    });
    let criterion_agrees = ek_ok_result
        .as_ref()
        .map(|r| (r.even_sum != r.odd_sum) == identity);
    theorems.push(TheoremCheck {
        name: "general_criterion",
        applicable: zero_pm1,
        holds: criterion_agrees.unwrap_or(true),
    });
    theorems.push(TheoremCheck {
        name: "nonneg_symmetric",
        applicable: nonnegative && symmetric,
        holds: !(nonnegative && symmetric) || identity,
    });
    theorems.push(TheoremCheck {
        name: "balanced_signed",
        applicable: balanced,
        holds: !balanced || identity,
    });
    let uniform = parity.is_some_and(CycleParity::is_uniform);
    theorems.push(TheoremCheck {
        name: "uniform_parity",
        applicable: uniform,
        holds: !uniform || identity,
    });
    theorems.push(TheoremCheck {
        name: "psd",
        applicable: psd,
        holds: !psd || identity,
    });
    // Lemma check: a PSD matrix always has a principal witness of full
    // permanental rank.
    let psd_principal = if psd {
        perm_rank_exact(a, true)?.rank == rho
    } else {
        true
    };
    theorems.push(TheoremCheck {
        name: "psd_principal_witness",
        applicable: psd,
        holds: psd_principal,
    });
    theorems.push(TheoremCheck {
        name: "yu_bound",
        applicable: true,
        holds: yu_bound,
    });

    Ok(VerifyReport {
        n,
        rho,
        eta,
        sum,
        classes: ClassFlags {
            nonnegative,
            symmetric,
            psd,
            zero_pm1,
            balanced,
            uniform_parity_class: parity.map(|p| p.as_str().to_string()),
        },
        identity,
        inequality,
        yu_bound,
        ek: ek_ok_result.as_ref().map(|r| format_exact(&r.even_sum)),
        ok: ek_ok_result.as_ref().map(|r| format_exact(&r.odd_sum)),
        witness: WitnessReport {
            rows: rank_result.witness_rows.as_slice().to_vec(),
            cols: rank_result.witness_cols.as_slice().to_vec(),
            permanent: format_exact(&rank_result.witness_permanent),
        },
        theorems,
    })
}

fn violation_error(seed: Option<u64>, matrix: &ExactMatrix, report: &VerifyReport) -> Error {
    let theorem = report
        .first_violation()
        .map(|t| t.name.to_string())
        .unwrap_or_default();
    Error::TheoremViolation(Box::new(Violation {
        seed,
        theorem,
        matrix_text: format_dense_matrix(matrix),
        report_json: report.to_json(),
    }))
}

/// Checks the report for theorem violations, wrapping the reproducer.
pub fn require_no_violation(
    seed: Option<u64>,
    matrix: &ExactMatrix,
    report: &VerifyReport,
) -> Result<()> {
    if report.first_violation().is_some() {
        return Err(violation_error(seed, matrix, report));
    }
    Ok(())
}

/// Tally of a batch run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BatchSummary {
    pub count: usize,
    pub identity_holds: usize,
    pub identity_fails: usize,
    pub inequality_holds: usize,
    pub yu_bound_holds: usize,
    /// Instances in the zero-diagonal {0,+-1} symmetric class, where the
    /// E_k != O_k criterion is defined.
    pub criterion_defined: usize,
    /// Of those, instances where the criterion agreed with the identity
    /// (always all of them, or the run aborts).
    pub criterion_agrees: usize,
}

fn seeded_configs(cfg: &GenConfig, count: usize) -> impl Iterator<Item = GenConfig> + '_ {
    (0..count).map(move |i| cfg.clone().with_seed(cfg.seed.wrapping_add(i as u64)))
}

/// Runs one generated instance: (seed, matrix, report).
fn run_instance(cfg: &GenConfig) -> Result<(u64, ExactMatrix, VerifyReport)> {
    let matrix = generate(cfg)?.into_matrix();
    let report = verify(&matrix)?;
    Ok((cfg.seed, matrix, report))
}

/// Runs `count` instances seeded seed, seed+1, .. and tallies outcomes.
/// The first theorem violation in seed order aborts with a reproducer.
/// `threads` > 1 distributes instances; results are independent of the
/// thread count because per-instance work is pure and the scan that picks
/// violations and tallies runs in seed order.
pub fn batch_verify(cfg: &GenConfig, count: usize, threads: usize) -> Result<BatchSummary> {
    let results = run_all(cfg, count, threads)?;
    let mut summary = BatchSummary::default();
    for (seed, matrix, report) in &results {
        require_no_violation(Some(*seed), matrix, report)?;
        summary.count += 1;
        if report.identity {
            summary.identity_holds += 1;
        } else {
            summary.identity_fails += 1;
        }
        if report.inequality {
            summary.inequality_holds += 1;
        }
        if report.yu_bound {
            summary.yu_bound_holds += 1;
        }
        if report.classes.zero_pm1 {
            summary.criterion_defined += 1;
            // Agreement is a theorem check; reaching here means it held.
            summary.criterion_agrees += 1;
        }
    }
    Ok(summary)
}

/// Collects the instances on which the identity rho + eta = n fails, each
/// re-verified from its serialized form. For classes covered by one of the
/// identity theorems the result is empty (or the run aborts with a
/// violation, which would be a bug).
pub fn search_counterexamples(
    cfg: &GenConfig,
    count: usize,
    threads: usize,
) -> Result<Vec<(u64, ExactMatrix, VerifyReport)>> {
    let results = run_all(cfg, count, threads)?;
    let mut hits = Vec::new();
    for (seed, matrix, report) in results {
        require_no_violation(Some(seed), &matrix, &report)?;
        if report.identity {
            continue;
        }
        // Re-verify through the serialized form; mismatch means a bug.
        let reparsed = crate::io::parse_dense_matrix(&format_dense_matrix(&matrix))?;
        let recheck = verify(&reparsed)?;
        if recheck.identity {
            return Err(Error::input(
                "re-verification disagreed with the original report",
            ));
        }
        hits.push((seed, matrix, recheck));
    }
    Ok(hits)
}

/// Evaluates instances, possibly across worker threads, returning them in
/// seed order regardless of scheduling.
fn run_all(
    cfg: &GenConfig,
    count: usize,
    threads: usize,
) -> Result<Vec<(u64, ExactMatrix, VerifyReport)>> {
    let configs: Vec<GenConfig> = seeded_configs(cfg, count).collect();
    if threads <= 1 || count < 2 {
        return configs.iter().map(run_instance).collect();
    }
    let workers = threads.min(count);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let chunks: Vec<Vec<(usize, Result<(u64, ExactMatrix, VerifyReport)>)>> =
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    let configs = &configs;
                    let next = &next;
                    scope.spawn(move || {
                        let mut local = Vec::new();
                        loop {
                            let idx = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                            if idx >= count {
                                return local;
                            }
                            local.push((idx, run_instance(&configs[idx])));
                        }
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
    let mut slots: Vec<Option<Result<(u64, ExactMatrix, VerifyReport)>>> =
        (0..count).map(|_| None).collect();
    for chunk in chunks {
        for (idx, result) in chunk {
            slots[idx] = Some(result);
        }
    }
    slots
        .into_iter()
        .map(|slot| slot.expect("every slot filled"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{example_matrix, GenKind};
    use crate::scalar::ratio;

    #[test]
    fn verify_matrix_b() {
        let b = example_matrix("matrix_B").unwrap();
        let r = verify(&b).unwrap();
        assert_eq!((r.n, r.rho, r.eta, r.sum), (4, 3, 2, 5));
        assert!(!r.identity);
        assert!(r.inequality);
        assert!(r.yu_bound);
        assert!(r.classes.zero_pm1 && r.classes.symmetric);
        assert!(!r.classes.nonnegative && !r.classes.psd && !r.classes.balanced);
        assert_eq!(r.classes.uniform_parity_class.as_deref(), Some("mixed"));
        // E_3 = O_3 = -2: the criterion correctly predicts the failure.
        assert_eq!(r.ek.as_deref(), Some("-2"));
        assert_eq!(r.ok.as_deref(), Some("-2"));
        assert!(r.first_violation().is_none(), "{:?}", r.first_violation());
    }

    #[test]
    fn verify_example_gen() {
        let a = example_matrix("example_gen").unwrap();
        let r = verify(&a).unwrap();
        assert_eq!((r.rho, r.eta, r.sum), (1, 2, 3));
        assert!(!r.identity && r.inequality);
        assert!(r.first_violation().is_none());
    }

    #[test]
    fn verify_identity_matrix_satisfies_everything() {
        let r = verify(&ExactMatrix::identity(4)).unwrap();
        assert_eq!((r.rho, r.eta), (4, 0));
        assert!(r.identity);
        assert!(r.classes.nonnegative && r.classes.psd && r.classes.symmetric);
        // Nonzero diagonal, so the graph class flags are off.
        assert!(!r.classes.zero_pm1);
        assert!(r.ek.is_none());
        for t in &r.theorems {
            assert!(!t.applicable || t.holds, "{}", t.name);
        }
    }

    #[test]
    fn verify_rejects_oversized_and_non_square() {
        assert!(matches!(
            verify(&ExactMatrix::zeros(13, 13)),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            verify(&ExactMatrix::zeros(2, 3)),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn report_json_has_schema_keys() {
        let r = verify(&example_matrix("matrix_B").unwrap()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in [
            "n", "rho", "eta", "sum", "classes", "identity", "inequality", "yu_bound", "ek",
            "ok", "witness", "theorems",
        ] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
        assert_eq!(json["witness"]["permanent"], "-2");
        assert_eq!(json["classes"]["zero_pm1"], true);
    }

    #[test]
    fn batch_on_covered_class_has_no_failures() {
        let cfg = GenConfig::new(GenKind::NonnegSymmetric, 5, 17);
        let summary = batch_verify(&cfg, 40, 1).unwrap();
        assert_eq!(summary.count, 40);
        assert_eq!(summary.identity_holds, 40);
        assert_eq!(summary.inequality_holds, 40);
        assert_eq!(summary.yu_bound_holds, 40);
    }

    #[test]
    fn batch_is_thread_count_invariant() {
        let cfg = GenConfig::new(GenKind::Pm1Symmetric, 5, 4242).with_density(ratio(3, 4));
        let one = batch_verify(&cfg, 30, 1).unwrap();
        let four = batch_verify(&cfg, 30, 4).unwrap();
        assert_eq!(one.identity_holds, four.identity_holds);
        assert_eq!(one.identity_fails, four.identity_fails);
        assert_eq!(one.count, four.count);
    }

    #[test]
    fn search_finds_counterexamples_in_pm1_class() {
        // Dense 4-vertex {0,+-1} symmetric matrices contain B-like
        // instances; this seed range is known to include at least one.
        let cfg = GenConfig::new(GenKind::Pm1Symmetric, 4, 1).with_density(ratio(9, 10));
        let hits = search_counterexamples(&cfg, 200, 2).unwrap();
        assert!(!hits.is_empty(), "expected at least one identity failure");
        for (_, _, report) in &hits {
            assert!(!report.identity);
            assert!(report.inequality);
            // The criterion must have predicted each failure: E_k = O_k.
            assert_eq!(report.ek, report.ok);
        }
    }

    #[test]
    fn search_on_balanced_class_is_empty() {
        let cfg = GenConfig::new(GenKind::BalancedSigned, 6, 99).with_density(ratio(2, 3));
        let hits = search_counterexamples(&cfg, 60, 2).unwrap();
        assert!(hits.is_empty());
    }
}

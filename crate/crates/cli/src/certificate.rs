//! Reduct certificates as self-contained JSON documents, and their
//! independent verifier.
//!
//! The verifier never calls the builder: it re-checks every claim
//! (series shape, centrality, stage tables, term evaluation, final
//! decomposition) from the document plus the input table alone.

use serde::{Deserialize, Serialize};

use finloop::arith::{p_part, prime_power};
use finloop::loops::{
    direct_product_many, is_normal, quotient, upper_central_series, LoopMap, NormalSubloop,
    Subloop,
};
use finloop::loops::subloop::center;
use finloop::reduct::{ReductCertificate, TermDag, TermNode, TermOp};
use finloop::FiniteLoop;

use crate::error::{CliError, Result};

pub const CERTIFICATE_FORMAT: &str = "finloop-reduct-certificate";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateDocument {
    pub format: String,
    pub version: u32,
    pub order: usize,
    pub input_table: Vec<Vec<usize>>,
    pub series: SeriesDoc,
    pub stages: Vec<StageDoc>,
    pub term_nodes: Vec<TermNodeDoc>,
    pub final_root: u32,
    pub final_star: Vec<Vec<usize>>,
    pub decomposition: Vec<FactorDoc>,
    /// Images of the iterated direct product of the factors in the loop.
    pub witness_from_product: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesDoc {
    pub chain: Vec<Vec<usize>>,
    pub primes: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StageDoc {
    pub index: usize,
    pub n: u64,
    pub m_e: u64,
    pub m_v: u64,
    pub r_table: Vec<Vec<usize>>,
    pub star: Vec<Vec<usize>>,
    pub root: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermNodeDoc {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorDoc {
    pub prime: u64,
    pub elements: Vec<usize>,
}

fn op_name(op: TermOp) -> &'static str {
    match op {
        TermOp::VarX => "x",
        TermOp::VarY => "y",
        TermOp::Mul => "mul",
        TermOp::LDiv => "ldiv",
        TermOp::RDiv => "rdiv",
    }
}

fn op_from_name(name: &str) -> Option<TermOp> {
    Some(match name {
        "x" => TermOp::VarX,
        "y" => TermOp::VarY,
        "mul" => TermOp::Mul,
        "ldiv" => TermOp::LDiv,
        "rdiv" => TermOp::RDiv,
        _ => return None,
    })
}

impl CertificateDocument {
    pub fn from_certificate(cert: &ReductCertificate) -> Self {
        let order = cert.input.order();
        let term_nodes = cert
            .dag
            .nodes()
            .iter()
            .map(|node| TermNodeDoc {
                op: op_name(node.op).to_string(),
                l: (!node.op.is_leaf()).then_some(node.left),
                r: (!node.op.is_leaf()).then_some(node.right),
            })
            .collect();
        CertificateDocument {
            format: CERTIFICATE_FORMAT.to_string(),
            version: 1,
            order,
            input_table: cert.input.rows(),
            series: SeriesDoc {
                chain: cert
                    .series
                    .chain
                    .iter()
                    .map(|c| c.elements().to_vec())
                    .collect(),
                primes: cert.series.primes.clone(),
            },
            stages: cert
                .stages
                .iter()
                .map(|s| StageDoc {
                    index: s.index,
                    n: s.n,
                    m_e: s.m_e,
                    m_v: s.m_v,
                    r_table: (0..order)
                        .map(|x| s.r_table[x * order..(x + 1) * order].to_vec())
                        .collect(),
                    star: s.star.rows(),
                    root: s.root,
                })
                .collect(),
            term_nodes,
            final_root: cert.final_root,
            final_star: cert.final_star.rows(),
            decomposition: cert
                .decomposition
                .factors
                .iter()
                .map(|(p, f)| FactorDoc {
                    prime: *p,
                    elements: f.elements().to_vec(),
                })
                .collect(),
            witness_from_product: cert.decomposition.witness.images.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn term_dag(&self) -> Result<TermDag> {
        let nodes = self
            .term_nodes
            .iter()
            .enumerate()
            .map(|(i, doc)| {
                let op = op_from_name(&doc.op).ok_or_else(|| {
                    CliError::Parse(format!("unknown term opcode `{}` at node {i}", doc.op))
                })?;
                Ok(TermNode {
                    op,
                    left: doc.l.unwrap_or(0),
                    right: doc.r.unwrap_or(0),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TermDag::from_nodes(nodes)?)
    }
}

/// One verifier check with its outcome.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Result of running the verifier: all checks with outcomes, in order.
#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn record(&mut self, name: impl Into<String>, passed: bool) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
        passed
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

/// Re-verifies a certificate against an input loop without recomputing
/// the construction. Each failed claim is reported as its own check.
pub fn verify_certificate(doc: &CertificateDocument, input: &FiniteLoop) -> VerifyReport {
    let mut report = VerifyReport::default();
    report.record(
        "document format and version",
        doc.format == CERTIFICATE_FORMAT && doc.version == 1,
    );
    if !report.record(
        "document table matches the input loop",
        doc.order == input.order() && doc.input_table == input.rows(),
    ) {
        return report;
    }
    let order = input.order();

    // series shape
    let mut chain: Vec<NormalSubloop> = Vec::new();
    let mut chain_ok = doc.series.chain.first().map(|c| c.len()) == Some(order)
        && doc.series.chain.last().map(|c| c.as_slice()) == Some(&[0][..])
        && doc.series.chain.len() == doc.series.primes.len() + 1;
    for elems in &doc.series.chain {
        match Subloop::checked(input, elems.clone())
            .and_then(|s| NormalSubloop::checked(input, s))
        {
            Ok(ns) => chain.push(ns),
            Err(_) => {
                chain_ok = false;
                break;
            }
        }
    }
    if !report.record("series entries are normal subloops from A down to 1", chain_ok) {
        return report;
    }
    let mut descending = true;
    let mut factors_ok = true;
    let mut central_ok = true;
    for (i, pair) in chain.windows(2).enumerate() {
        let (top, bot) = (&pair[0], &pair[1]);
        descending &= top.order() > bot.order()
            && bot.elements().iter().all(|&x| top.contains(x));
        match prime_power((top.order() / bot.order()) as u64) {
            Some((p, _)) => factors_ok &= p == doc.series.primes[i],
            None => factors_ok = false,
        }
        match quotient(input, bot).and_then(|q| {
            let image = q.image_of(top.elements());
            center(&q.quot).map(|z| image.iter().all(|&c| z.contains(c)))
        }) {
            Ok(ok) => central_ok &= ok,
            Err(_) => central_ok = false,
        }
    }
    report.record("series is strictly descending", descending);
    report.record("series factors have the recorded prime power orders", factors_ok);
    report.record("series factors are central", central_ok);

    // term DAG
    let dag = match doc.term_dag() {
        Ok(dag) => dag,
        Err(_) => {
            report.record("term DAG is well formed", false);
            return report;
        }
    };
    report.record("term DAG is well formed", true);

    // stages
    for stage in &doc.stages {
        let label = format!("stage {}", stage.index);
        let star = match FiniteLoop::from_rows(stage.star.clone()) {
            Ok(star) => star,
            Err(_) => {
                report.record(format!("{label}: star table is a loop"), false);
                continue;
            }
        };
        report.record(format!("{label}: star table is a loop"), true);
        let in_range = stage.index >= 2 && stage.index - 1 < chain.len();
        report.record(format!("{label}: index within series"), in_range);
        if in_range {
            let c_i = &chain[stage.index - 1];
            let r_ok = stage.r_table.len() == order
                && stage
                    .r_table
                    .iter()
                    .all(|row| row.len() == order && row.iter().all(|&r| c_i.contains(r)));
            report.record(format!("{label}: r values lie in C_{}", stage.index - 1), r_ok);
        }
        let eval_ok = (0..order).all(|x| {
            (0..order).all(|y| dag.eval(input, stage.root, x, y) == Ok(star.mul(x, y)))
        });
        report.record(format!("{label}: term evaluates to the star table"), eval_ok);
    }

    // final table
    let Ok(final_star) = FiniteLoop::from_rows(doc.final_star.clone()) else {
        report.record("final star is a loop", false);
        return report;
    };
    report.record("final star is a loop", true);
    report.record(
        "final star matches the last stage",
        doc.stages
            .last()
            .map_or(doc.final_star == doc.input_table, |s| s.star == doc.final_star),
    );
    let eval_ok = (0..order).all(|x| {
        (0..order).all(|y| dag.eval(input, doc.final_root, x, y) == Ok(final_star.mul(x, y)))
    });
    report.record("final term evaluates to the final star table", eval_ok);

    // decomposition of the final loop
    let mut factor_loops = Vec::new();
    let mut factors_valid = true;
    for f in &doc.decomposition {
        match Subloop::checked(&final_star, f.elements.clone()) {
            Ok(sub) => {
                let normal = is_normal(&final_star, &sub).unwrap_or(false);
                let right_order = f.elements.len() as u64 == p_part(order as u64, f.prime);
                let (sub_loop, _) = sub.as_loop(&final_star);
                let nilpotent = upper_central_series(&sub_loop)
                    .map(|s| s.nilpotent)
                    .unwrap_or(false);
                factors_valid &= normal && right_order && nilpotent;
                factor_loops.push(sub_loop);
            }
            Err(_) => factors_valid = false,
        }
    }
    let primes_sorted = doc
        .decomposition
        .windows(2)
        .all(|w| w[0].prime < w[1].prime);
    let full_order: usize = doc.decomposition.iter().map(|f| f.elements.len()).product();
    report.record(
        "decomposition factors are nilpotent normal subloops of prime power order",
        factors_valid && primes_sorted && full_order == order,
    );
    if factors_valid && full_order == order {
        let product = direct_product_many(&factor_loops.iter().collect::<Vec<_>>());
        let witness = LoopMap {
            images: doc.witness_from_product.clone(),
        };
        report.record(
            "witness is an isomorphism from the factor product",
            witness.images.len() == order && witness.is_isomorphism(&product, &final_star),
        );
    } else {
        report.record("witness is an isomorphism from the factor product", false);
    }
    report
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{sides, Sample, Status, Stopwatch};
use crate::error::Result;
use crate::oracles::{
    count_partitions, double_sum_eval, expand_product_bruteforce, DoubleSum, Index, IntPoch, PartitionClass,
    ProgFactor, QuadForm, Weight,
};
use crate::qcore::{Mismatch, Monomial, QLaurent};

/// One catalog side compared with a brute-force oracle.
#[derive(Clone, Copy)]
pub struct OracleCheck {
    pub name: &'static str,
    pub id: &'static str,
    pub side: &'static str,
    pub oracle: &'static str,
    build: fn(i64) -> Result<(QLaurent, QLaurent)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub id: String,
    pub side: String,
    pub oracle: String,
    pub order: i64,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub error: Option<String>,
    pub elapsed_ms: f64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{:<9} {status} N={:<4} {} {} vs {}", self.name, self.order, self.id, self.side, self.oracle)?;
        if let Some(m) = &self.first_mismatch {
            write!(f, "  first mismatch at q^{}: {} vs {}", m.q_exp, m.lhs, m.rhs)?;
        }
        if let Some(e) = &self.error {
            write!(f, "  error: {e}")?;
        }
        Ok(())
    }
}

impl OracleCheck {
    pub fn run(&self, order: i64) -> OracleReport {
        let clock = Stopwatch::start();
        let (status, first_mismatch, error) = match (self.build)(order) {
            Ok((ours, theirs)) => match ours.first_mismatch(&theirs) {
                None => (Status::Pass, None, None),
                m => (Status::Fail, m, None),
            },
            Err(e) => (Status::Fail, None, Some(e.to_string())),
        };
        OracleReport {
            name: self.name.into(),
            id: self.id.into(),
            side: self.side.into(),
            oracle: self.oracle.into(),
            order,
            status,
            first_mismatch,
            error,
            elapsed_ms: clock.elapsed_ms(),
        }
    }
}

fn rhs(id: &str, n: i64) -> Result<QLaurent> {
    Ok(sides(id, n, None)?.1)
}

fn lhs(id: &str, n: i64) -> Result<QLaurent> {
    Ok(sides(id, n, None)?.0)
}

fn gg_sample(j: i64) -> Sample {
    Sample::from([("t".to_string(), Monomial::q_pow(j))])
}

fn gg_sum(j: i64) -> DoubleSum {
    DoubleSum {
        quad: QuadForm { mm: 4, mr: 4, rr: 2, m: 0, r: -1 },
        denoms: vec![IntPoch::qq(4, Index::M), IntPoch::qq(2, Index::R)],
        numer: None,
        weight: (j != 0).then_some(Weight { coeff: 1, q_exp: j, alpha: 2, beta: 1 }),
    }
}

fn gg_lhs(j: i64, n: i64) -> Result<(QLaurent, QLaurent)> {
    Ok((sides("GG", n, Some(&gg_sample(j)))?.0, double_sum_eval(&gg_sum(j), n)?))
}

fn gg_rhs(j: i64, n: i64) -> Result<(QLaurent, QLaurent)> {
    let bf = expand_product_bruteforce(&[ProgFactor::infinite(1, 1 + j as u64, 2, 1)], n)?;
    Ok((sides("GG", n, Some(&gg_sample(j)))?.1, bf))
}

/// Every oracle comparison, in a fixed order.
pub fn oracle_checks() -> Vec<OracleCheck> {
    vec![
        OracleCheck {
            name: "rr1-rhs",
            id: "RR1",
            side: "rhs",
            oracle: "partitions into parts 1, 4 mod 5",
            build: |n| Ok((rhs("RR1", n)?, count_partitions(&PartitionClass::residues(5, &[1, 4]), n)?)),
        },
        OracleCheck {
            name: "rr2-rhs",
            id: "RR2",
            side: "rhs",
            oracle: "partitions into parts 2, 3 mod 5",
            build: |n| Ok((rhs("RR2", n)?, count_partitions(&PartitionClass::residues(5, &[2, 3]), n)?)),
        },
        OracleCheck {
            name: "e9-rhs",
            id: "E9",
            side: "rhs",
            oracle: "partitions into distinct parts",
            build: |n| Ok((rhs("E9", n)?, count_partitions(&PartitionClass::distinct_parts(), n)?)),
        },
        OracleCheck {
            name: "e11-rhs",
            id: "E11",
            side: "rhs",
            oracle: "brute-force 1/((1+q^n)(1-q^(5n-4))(1-q^(5n-1)))",
            build: |n| {
                let f = [
                    ProgFactor::infinite(1, 1, 1, -1),
                    ProgFactor::infinite(-1, 1, 5, -1),
                    ProgFactor::infinite(-1, 4, 5, -1),
                ];
                Ok((rhs("E11", n)?, expand_product_bruteforce(&f, n)?))
            },
        },
        OracleCheck {
            name: "e12-rhs",
            id: "E12",
            side: "rhs",
            oracle: "brute-force 1/((1+q^n)(1-q^(5n-3))(1-q^(5n-2)))",
            build: |n| {
                let f = [
                    ProgFactor::infinite(1, 1, 1, -1),
                    ProgFactor::infinite(-1, 2, 5, -1),
                    ProgFactor::infinite(-1, 3, 5, -1),
                ];
                Ok((rhs("E12", n)?, expand_product_bruteforce(&f, n)?))
            },
        },
        OracleCheck {
            name: "e17-rhs",
            id: "E17",
            side: "rhs",
            oracle: "partitions into distinct odd parts",
            build: |n| {
                let pc = PartitionClass { distinct: true, ..PartitionClass::residues(2, &[1]) };
                Ok((rhs("E17", n)?, count_partitions(&pc, n)?))
            },
        },
        OracleCheck {
            name: "e17-lhs",
            id: "E17",
            side: "lhs",
            oracle: "integer double sum",
            build: |n| Ok((lhs("E17", n)?, double_sum_eval(&gg_sum(0), n)?)),
        },
        OracleCheck {
            name: "e18-lhs",
            id: "E18",
            side: "lhs",
            oracle: "integer double sum",
            build: |n| {
                let ds = DoubleSum {
                    quad: QuadForm { mm: 2, mr: 2, rr: 1, m: 0, r: 0 },
                    denoms: vec![IntPoch::qq(2, Index::M), IntPoch::qq(1, Index::R)],
                    numer: None,
                    weight: None,
                };
                Ok((lhs("E18", n)?, double_sum_eval(&ds, n)?))
            },
        },
        OracleCheck {
            name: "e18-rhs",
            id: "E18",
            side: "rhs",
            oracle: "brute-force (1-q^(6n-3))^2 (1-q^(6n))/(1-q^n)",
            build: |n| {
                let f = [
                    ProgFactor::infinite(-1, 3, 6, 2),
                    ProgFactor::infinite(-1, 6, 6, 1),
                    ProgFactor::infinite(-1, 1, 1, -1),
                ];
                Ok((rhs("E18", n)?, expand_product_bruteforce(&f, n)?))
            },
        },
        OracleCheck {
            name: "gg-1-lhs",
            id: "GG",
            side: "lhs (t=1)",
            oracle: "integer double sum",
            build: |n| gg_lhs(0, n),
        },
        OracleCheck {
            name: "gg-1-rhs",
            id: "GG",
            side: "rhs (t=1)",
            oracle: "brute-force prod (1+q^(2n-1))",
            build: |n| gg_rhs(0, n),
        },
        OracleCheck {
            name: "gg-q-lhs",
            id: "GG",
            side: "lhs (t=q)",
            oracle: "weighted integer double sum",
            build: |n| gg_lhs(1, n),
        },
        OracleCheck {
            name: "gg-q-rhs",
            id: "GG",
            side: "rhs (t=q)",
            oracle: "brute-force prod (1+q^(2n))",
            build: |n| gg_rhs(1, n),
        },
        OracleCheck {
            name: "gg-q2-lhs",
            id: "GG",
            side: "lhs (t=q^2)",
            oracle: "weighted integer double sum",
            build: |n| gg_lhs(2, n),
        },
        OracleCheck {
            name: "gg-q2-rhs",
            id: "GG",
            side: "rhs (t=q^2)",
            oracle: "brute-force prod (1+q^(2n+1))",
            build: |n| gg_rhs(2, n),
        },
        OracleCheck {
            name: "gg-q3-lhs",
            id: "GG",
            side: "lhs (t=q^3)",
            oracle: "weighted integer double sum",
            build: |n| gg_lhs(3, n),
        },
        OracleCheck {
            name: "gg-q3-rhs",
            id: "GG",
            side: "rhs (t=q^3)",
            oracle: "brute-force prod (1+q^(2n+2))",
            build: |n| gg_rhs(3, n),
        },
    ]
}

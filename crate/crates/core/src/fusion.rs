//! The fusion ring K_0(C) recovered from the S-matrix.
//!
//! The columns `S_im / S_0m` of the S-matrix are the characters of the
//! fusion algebra, so the structure constants are fixed by
//! `N_ij^k = sum_m S_im S_jm (S^-1)_mk / S_0m`. Integrality and
//! non-negativity are postconditions checked on every entry, not
//! assumptions.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclo::Cyclotomic;
use crate::matrix::Matrix;
use crate::modular::{ModularData, ModularError};

#[derive(Debug, Error)]
pub enum FusionError {
    #[error("fusion coefficient N[{i}][{j}]^{k} is not a rational integer: {value}")]
    NotIntegral { i: usize, j: usize, k: usize, value: String },
    #[error("fusion coefficient N[{i}][{j}]^{k} = {value} is negative")]
    NegativeCoefficient { i: usize, j: usize, k: usize, value: i64 },
    #[error("fusion ring invariant violated: {0}")]
    InvariantViolated(String),
    #[error(transparent)]
    Modular(#[from] ModularError),
}

/// Non-negative integer structure constants of K_0(C) with the duality
/// permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    rank: usize,
    n: Vec<i64>, // n[i*rank*rank + j*rank + k] = N_ij^k
    dual: Vec<usize>,
}

impl FusionRing {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> i64 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// Verifies the ring axioms directly; used as a postcondition and by
    /// tests. Associativity is exact and exhaustive.
    pub fn check_invariants(&self, dims: &[Cyclotomic]) -> Result<(), FusionError> {
        let r = self.rank;
        let fail = |msg: String| Err(FusionError::InvariantViolated(msg));
        for j in 0..r {
            for k in 0..r {
                let expect = i64::from(j == k);
                if self.n(0, j, k) != expect {
                    return fail(format!("unit row: N[0][{j}]^{k} = {}", self.n(0, j, k)));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if self.n(i, j, k) != self.n(j, i, k) {
                        return fail(format!("commutativity at ({i},{j},{k})"));
                    }
                }
                let expect = i64::from(self.dual[i] == j);
                if self.n(i, j, 0) != expect {
                    return fail(format!("duality: N[{i}][{j}]^0 = {}", self.n(i, j, 0)));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: i64 = (0..r).map(|m| self.n(i, j, m) * self.n(m, k, l)).sum();
                        let rhs: i64 = (0..r).map(|m| self.n(j, k, m) * self.n(i, m, l)).sum();
                        if lhs != rhs {
                            return fail(format!("associativity at ({i},{j},{k},{l})"));
                        }
                    }
                }
            }
        }
        // Dimension homomorphism: sum_k N_ij^k d_k = d_i d_j.
        for i in 0..r {
            for j in 0..r {
                let mut acc = Cyclotomic::zero();
                for k in 0..r {
                    if self.n(i, j, k) != 0 {
                        acc = acc.add(&dims[k].scale(&crate::cyclo::rat_int(self.n(i, j, k))));
                    }
                }
                if acc != dims[i].mul(&dims[j]) {
                    return fail(format!("dimension homomorphism at ({i},{j})"));
                }
            }
        }
        Ok(())
    }

    /// Nonzero entries as `{"i,j,k": N}` with sorted keys.
    pub fn to_json(&self) -> Value {
        let mut map = BTreeMap::new();
        let r = self.rank;
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = self.n(i, j, k);
                    if v != 0 {
                        map.insert(format!("{i},{j},{k}"), Value::from(v));
                    }
                }
            }
        }
        json!({
            "rank": self.rank,
            "dual": self.dual,
            "N": map,
        })
    }
}

/// Verlinde fusion rules of validated modular data.
pub fn verlinde(md: &ModularData) -> Result<FusionRing, FusionError> {
    let r = md.rank();
    let scalars = md.derive_scalars()?;
    let s = md.s();
    let s_inv = s.inverse().expect("det S != 0 was validated");
    let dim_inv: Vec<Cyclotomic> = (0..r)
        .map(|m| md.dim(m).inverse().expect("dims are nonzero"))
        .collect();
    let mut n = vec![0i64; r * r * r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let mut acc = Cyclotomic::zero();
                for m in 0..r {
                    let term = s.at(i, m).mul(s.at(j, m)).mul(s_inv.at(m, k)).mul(&dim_inv[m]);
                    acc = acc.add(&term);
                }
                let value = acc.as_integer().ok_or_else(|| FusionError::NotIntegral {
                    i,
                    j,
                    k,
                    value: acc.to_string(),
                })?;
                let value = i64::try_from(value).map_err(|_| FusionError::NotIntegral {
                    i,
                    j,
                    k,
                    value: acc.to_string(),
                })?;
                if value < 0 {
                    return Err(FusionError::NegativeCoefficient { i, j, k, value });
                }
                n[(i * r + j) * r + k] = value;
            }
        }
    }
    let ring = FusionRing { rank: r, n, dual: scalars.dual };
    let dims: Vec<Cyclotomic> = (0..r).map(|i| md.dim(i).clone()).collect();
    ring.check_invariants(&dims)?;
    Ok(ring)
}

/// The character matrix `Lambda_im = S_im / S_0m`; each column is a ring
/// homomorphism from the fusion algebra to the scalars.
pub fn characters(md: &ModularData) -> Matrix<Cyclotomic> {
    let r = md.rank();
    Matrix::from_fn(r, r, |i, m| {
        md.s()
            .at(i, m)
            .div(md.dim(m))
            .expect("dims are nonzero for validated data")
    })
}

/// Diagonal multiset of an integer matrix, with the two trace statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpMultiset {
    /// multiplicity per index; entries may be zero
    pub multiplicities: Vec<i64>,
}

impl ExpMultiset {
    pub fn total(&self) -> i64 {
        self.multiplicities.iter().sum()
    }

    pub fn to_json(&self) -> Value {
        let mut map = BTreeMap::new();
        for (i, &m) in self.multiplicities.iter().enumerate() {
            if m != 0 {
                map.insert(i.to_string(), Value::from(m));
            }
        }
        Value::Object(map.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpReport {
    pub exp: ExpMultiset,
    pub trace: i64,
    pub trace_zzt: i64,
}

/// Exponent multiset `{i with multiplicity Z_ii}` plus `tr Z` and `tr(Z Z^t)`.
pub fn exp_of(z: &[Vec<i64>]) -> ExpReport {
    let n = z.len();
    assert!(z.iter().all(|row| row.len() == n), "Z must be square");
    let multiplicities: Vec<i64> = (0..n).map(|i| z[i][i]).collect();
    let trace = multiplicities.iter().sum();
    let trace_zzt = z.iter().flatten().map(|v| v * v).sum();
    ExpReport { exp: ExpMultiset { multiplicities }, trace, trace_zzt }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::{gen_named, gen_pointed, gen_sl2, pointed_forms};

    /// Independent truncated Clebsch-Gordan oracle for affine sl(2) at
    /// level k: N_ab^c = 1 iff |a-b| <= c <= min(a+b, 2k-a-b) and a+b+c
    /// is even.
    pub fn clebsch_gordan_level(k: u64, a: usize, b: usize, c: usize) -> i64 {
        let (a, b, c, k) = (a as i64, b as i64, c as i64, k as i64);
        let lower = (a - b).abs();
        let upper = (a + b).min(2 * k - a - b);
        i64::from(c >= lower && c <= upper && (a + b + c) % 2 == 0)
    }

    #[test]
    fn sl2_fusion_matches_clebsch_gordan_small() {
        for k in 0..=4u64 {
            let ring = verlinde(&gen_sl2(k)).unwrap();
            for a in 0..ring.rank() {
                for b in 0..ring.rank() {
                    for c in 0..ring.rank() {
                        assert_eq!(
                            ring.n(a, b, c),
                            clebsch_gordan_level(k, a, b, c),
                            "level {k} at ({a},{b},{c})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fibonacci_fusion() {
        let ring = verlinde(&gen_named("fibonacci").unwrap()).unwrap();
        assert_eq!(ring.n(1, 1, 0), 1);
        assert_eq!(ring.n(1, 1, 1), 1);
        assert_eq!(ring.n(0, 1, 1), 1);
    }

    #[test]
    fn trivial_fusion() {
        let ring = verlinde(&gen_sl2(0)).unwrap();
        assert_eq!(ring.n(0, 0, 0), 1);
    }

    #[test]
    fn ising_fusion_table() {
        // sigma x sigma = 1 + psi, sigma x psi = sigma, psi x psi = 1.
        let ring = verlinde(&gen_named("ising").unwrap()).unwrap();
        assert_eq!(ring.n(1, 1, 0), 1);
        assert_eq!(ring.n(1, 1, 2), 1);
        assert_eq!(ring.n(1, 1, 1), 0);
        assert_eq!(ring.n(1, 2, 1), 1);
        assert_eq!(ring.n(2, 2, 0), 1);
    }

    #[test]
    fn pointed_fusion_is_group_ring() {
        for n in 2..=6u64 {
            for q in pointed_forms(n) {
                let ring = verlinde(&gen_pointed(n, &q).unwrap()).unwrap();
                for a in 0..n as usize {
                    for b in 0..n as usize {
                        for c in 0..n as usize {
                            let expect = i64::from((a + b) % n as usize == c);
                            assert_eq!(ring.n(a, b, c), expect, "Z_{n} at ({a},{b},{c})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn characters_are_ring_homomorphisms() {
        for md in [gen_sl2(3), gen_named("ising").unwrap(), gen_named("fibonacci").unwrap()] {
            let ring = verlinde(&md).unwrap();
            let lambda = characters(&md);
            let r = md.rank();
            for m in 0..r {
                for i in 0..r {
                    for j in 0..r {
                        let lhs = lambda.at(i, m).mul(lambda.at(j, m));
                        let mut rhs = Cyclotomic::zero();
                        for k in 0..r {
                            if ring.n(i, j, k) != 0 {
                                rhs = rhs.add(
                                    &lambda.at(k, m).scale(&crate::cyclo::rat_int(ring.n(i, j, k))),
                                );
                            }
                        }
                        assert_eq!(lhs, rhs, "column {m} fails at ({i},{j})");
                    }
                }
            }
            // Distinct columns: the bijection onto irreducible characters.
            for m1 in 0..r {
                for m2 in m1 + 1..r {
                    assert!(
                        (0..r).any(|i| lambda.at(i, m1) != lambda.at(i, m2)),
                        "columns {m1} and {m2} coincide"
                    );
                }
            }
        }
    }

    #[test]
    fn character_column_zero_is_dims() {
        let md = gen_sl2(4);
        let lambda = characters(&md);
        for i in 0..md.rank() {
            assert_eq!(lambda.at(i, 0), md.dim(i));
        }
    }

    #[test]
    fn fibonacci_second_column_is_galois_conjugate_dimension() {
        let md = gen_named("fibonacci").unwrap();
        let lambda = characters(&md);
        assert!(lambda.at(0, 1).is_one());
        // 1 - phi, frozen from the numeric oracle.
        let e = crate::embed::embed(lambda.at(1, 1), 45);
        let reference = crate::embed::decimal(
            "-0.6180339887498948482045868343656381177203091798057628621",
        );
        assert!(num_traits::Signed::abs(&(e.re - reference)) < crate::cyclo::rat(1, 10i64.pow(18)));
    }

    #[test]
    fn exp_of_reports() {
        let id = vec![vec![1, 0], vec![0, 1]];
        let report = exp_of(&id);
        assert_eq!(report.exp.multiplicities, vec![1, 1]);
        assert_eq!(report.trace, 2);
        assert_eq!(report.trace_zzt, 2);

        let zero = vec![vec![0, 0], vec![0, 0]];
        let report = exp_of(&zero);
        assert_eq!(report.exp.total(), 0);
        assert_eq!(report.trace, 0);
        assert_eq!(report.trace_zzt, 0);

        let z = vec![vec![1, 0, 0], vec![0, 2, 1], vec![0, 0, 1]];
        let report = exp_of(&z);
        assert_eq!(report.trace, 4);
        assert_eq!(report.trace_zzt, 1 + 4 + 1 + 1);
    }

    #[test]
    fn fusion_json_lists_nonzero_entries_sorted() {
        let ring = verlinde(&gen_named("fibonacci").unwrap()).unwrap();
        let v = ring.to_json();
        let keys: Vec<&String> = v["N"].as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(v["N"]["1,1,1"], 1);
    }
}

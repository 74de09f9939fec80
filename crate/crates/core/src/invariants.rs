//! Classification of modular invariants: non-negative integer matrices Z
//! with Z_00 = 1 commuting with S and diag(T).
//!
//! The commutant is computed as an exact rational nullspace; the physical
//! slice is then enumerated by branch-and-bound over its lattice points,
//! pruned with the entry bound `Z_ij <= d_i d_j` evaluated through
//! outward-rounded interval embeddings. Every reported matrix is
//! re-verified against both commutation relations in exact arithmetic.

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclo::{Cyclotomic, Rational};
use crate::embed;
use crate::fusion::{exp_of, ExpMultiset};
use crate::matrix::Matrix;
use crate::modular::{ModularData, ModularError};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("search region could not be certified compact: {0}")]
    UnboundedSearch(String),
    #[error(transparent)]
    Modular(#[from] ModularError),
}

/// Rational basis of `{M : MS = SM, M diag(T) = diag(T) M}`.
#[derive(Clone, Debug)]
pub struct CommutantBasis {
    rank: usize,
    /// flattened coordinates (i*n+j) where theta_i = theta_j; the
    /// complement is forced to zero by the T-relation
    support: Vec<usize>,
    /// basis vectors over `support`, in nullspace canonical form: vector
    /// `alpha` has entry 1 at `free[alpha]` and 0 at the other free
    /// coordinates
    basis: Vec<Vec<Rational>>,
    /// indices into `support` of the free coordinates
    free: Vec<usize>,
}

impl CommutantBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The basis as full n x n rational matrices.
    pub fn matrices(&self) -> Vec<Matrix<Rational>> {
        self.basis
            .iter()
            .map(|vec| {
                let mut m = Matrix::zero(self.rank, self.rank);
                for (idx, &coord) in self.support.iter().enumerate() {
                    *m.at_mut(coord / self.rank, coord % self.rank) = vec[idx].clone();
                }
                m
            })
            .collect()
    }
}

/// Exact rational basis of the commutant of {S, diag T}.
pub fn commutant(md: &ModularData) -> CommutantBasis {
    let n = md.rank();
    let s = md.s();
    let t = md.t();
    // diag(T)-commutation is entrywise: Z_ij = 0 unless theta_i = theta_j.
    let support: Vec<usize> = (0..n * n)
        .filter(|&p| t[p / n] == t[p % n])
        .collect();
    let coord_index: Vec<Option<usize>> = {
        let mut v = vec![None; n * n];
        for (idx, &p) in support.iter().enumerate() {
            v[p] = Some(idx);
        }
        v
    };
    // One cyclotomic equation per (i,j): sum_l Z_il S_lj - S_il Z_lj = 0,
    // expanded into phi(N) rational equations via power-basis coordinates.
    let order = {
        let mut m: u64 = 1;
        for i in 0..n {
            for j in 0..n {
                m = num_integer::lcm(m, s.at(i, j).order());
            }
        }
        m
    };
    let width = crate::cyclo::phi(order) as usize;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // coefficient of unknown z_p in equation (i,j), as a cyclotomic
            let mut coeff = vec![Cyclotomic::zero(); support.len()];
            for l in 0..n {
                if let Some(idx) = coord_index[i * n + l] {
                    coeff[idx] = coeff[idx].add(s.at(l, j));
                }
                if let Some(idx) = coord_index[l * n + j] {
                    coeff[idx] = coeff[idx].sub(s.at(i, l));
                }
            }
            if coeff.iter().all(Cyclotomic::is_zero) {
                continue;
            }
            let lifted: Vec<Cyclotomic> = coeff.iter().map(|c| c.lift(order)).collect();
            for w in 0..width {
                let row: Vec<Rational> = lifted.iter().map(|c| c.coeffs()[w].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![Rational::zero(); support.len()]);
    }
    let system = Matrix::from_rows(rows);
    let mut rref = system.clone();
    let pivots = rref.rref();
    let free: Vec<usize> = (0..support.len()).filter(|c| !pivots.contains(c)).collect();
    let basis = system.nullspace();
    debug_assert_eq!(basis.len(), free.len());
    CommutantBasis { rank: n, support, basis, free }
}

/// A physical modular invariant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModularInvariant {
    pub z: Vec<Vec<i64>>,
    pub physical: bool,
}

impl ModularInvariant {
    pub fn new(z: Vec<Vec<i64>>) -> Self {
        let physical = z[0][0] == 1;
        ModularInvariant { z, physical }
    }

    pub fn rank(&self) -> usize {
        self.z.len()
    }

    pub fn is_identity(&self) -> bool {
        self.z
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)))
    }

    pub fn is_permutation(&self) -> Option<Vec<usize>> {
        let n = self.rank();
        let mut perm = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        for i in 0..n {
            let mut hit = None;
            for j in 0..n {
                match self.z[i][j] {
                    0 => {}
                    1 if hit.is_none() => hit = Some(j),
                    _ => return None,
                }
            }
            let j = hit?;
            if seen[j] {
                return None;
            }
            seen[j] = true;
            perm[i] = j;
        }
        Some(perm)
    }

    /// Exact check of both commutation relations plus entry positivity.
    pub fn verify(&self, md: &ModularData) -> bool {
        let n = md.rank();
        if self.rank() != n || self.z.iter().any(|row| row.len() != n) {
            return false;
        }
        if self.z.iter().flatten().any(|&v| v < 0) {
            return false;
        }
        let zc = Matrix::from_fn(n, n, |i, j| Cyclotomic::from_integer(self.z[i][j]));
        let s = md.s();
        if !zc.mul(s).eq(&s.mul(&zc)) {
            return false;
        }
        let dt = Matrix::diagonal(md.t());
        zc.mul(&dt).eq(&dt.mul(&zc))
    }

    pub fn to_json(&self) -> Value {
        json!({ "Z": self.z, "physical": self.physical })
    }
}

/// Options for the invariant search.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// multiply every entry bound by this factor (completeness
    /// falsification hook)
    pub bound_factor: Rational,
    /// number of worker threads for independent subtrees
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { bound_factor: Rational::from_integer(1.into()), jobs: 1 }
    }
}

struct SearchSpace {
    /// per support coordinate: inclusive integer bounds
    lo: Vec<i64>,
    hi: Vec<i64>,
    /// basis vectors over support coordinates
    basis: Vec<Vec<Rational>>,
    /// per level: inclusive integer range of the branching value
    var_lo: Vec<i64>,
    var_hi: Vec<i64>,
    /// rem_min[level][coord]: minimal contribution of levels >= level
    rem_min: Vec<Vec<Rational>>,
    rem_max: Vec<Vec<Rational>>,
}

/// Complete list of physical invariants (Z_00 = 1, entries non-negative
/// integers), sorted lexicographically by flattened Z.
pub fn enumerate(
    md: &ModularData,
    basis: &CommutantBasis,
    opts: &SearchOptions,
) -> Result<Vec<ModularInvariant>, InvariantError> {
    let n = md.rank();
    let m = basis.dimension();
    // Certified-positive dimensions give the entry bounds; without them the
    // positivity region of the slice has no certified compact box.
    let dims_upper = match crate::modular::certified_positive_dims(md) {
        Some(_) => {
            let mut ub = Vec::with_capacity(n);
            for i in 0..n {
                ub.push(embed::real_upper_bound(md.dim(i), 40).expect("certified real"));
            }
            ub
        }
        None => {
            return Err(InvariantError::UnboundedSearch(
                "quantum dimensions are not certified positive reals".into(),
            ))
        }
    };
    let mut lo = vec![0i64; basis.support.len()];
    let mut hi = vec![0i64; basis.support.len()];
    for (idx, &coord) in basis.support.iter().enumerate() {
        let (i, j) = (coord / n, coord % n);
        if i == 0 && j == 0 {
            lo[idx] = 1;
            hi[idx] = 1;
            continue;
        }
        let bound = &dims_upper[i] * &dims_upper[j] * &opts.bound_factor;
        hi[idx] = bound.floor().to_integer().to_i64().ok_or_else(|| {
            InvariantError::UnboundedSearch(format!("entry bound at ({i},{j}) overflows"))
        })?;
    }
    let var_lo: Vec<i64> = basis.free.iter().map(|&f| lo[f]).collect();
    let var_hi: Vec<i64> = basis.free.iter().map(|&f| hi[f]).collect();

    // Suffix contribution intervals for pruning.
    let s_len = basis.support.len();
    let mut rem_min = vec![vec![Rational::zero(); s_len]; m + 1];
    let mut rem_max = vec![vec![Rational::zero(); s_len]; m + 1];
    for level in (0..m).rev() {
        for c in 0..s_len {
            let b = &basis.basis[level][c];
            let lo_c = b * Rational::from_integer(var_lo[level].into());
            let hi_c = b * Rational::from_integer(var_hi[level].into());
            let (cmin, cmax) = if lo_c <= hi_c { (lo_c, hi_c) } else { (hi_c, lo_c) };
            rem_min[level][c] = &rem_min[level + 1][c] + cmin;
            rem_max[level][c] = &rem_max[level + 1][c] + cmax;
        }
    }
    let space = SearchSpace {
        lo,
        hi,
        basis: basis.basis.clone(),
        var_lo,
        var_hi,
        rem_min,
        rem_max,
    };

    // Independent subtrees: the values of the first branching variable.
    let mut results: Vec<ModularInvariant> = if m == 0 {
        Vec::new()
    } else {
        let tasks: Vec<i64> = (space.var_lo[0]..=space.var_hi[0]).collect();
        let jobs = opts.jobs.max(1).min(tasks.len().max(1));
        let mut found: Vec<Vec<ModularInvariant>> = Vec::new();
        if jobs <= 1 {
            for &v in &tasks {
                found.push(search_subtree(&space, basis, n, v));
            }
        } else {
            let chunks: Vec<Vec<i64>> = (0..jobs)
                .map(|w| tasks.iter().copied().skip(w).step_by(jobs).collect())
                .collect();
            let mut per_chunk: Vec<Vec<ModularInvariant>> = Vec::new();
            std::thread::scope(|scope| {
                let handles: Vec<_> = chunks
                    .iter()
                    .map(|chunk| {
                        let space = &space;
                        scope.spawn(move || {
                            let mut acc = Vec::new();
                            for &v in chunk {
                                acc.extend(search_subtree(space, basis, n, v));
                            }
                            acc
                        })
                    })
                    .collect();
                for h in handles {
                    per_chunk.push(h.join().expect("search worker panicked"));
                }
            });
            found = per_chunk;
        }
        found.into_iter().flatten().collect()
    };
    results.sort();
    for inv in &results {
        assert!(inv.verify(md), "post-search exact verification failed");
    }
    Ok(results)
}

fn search_subtree(
    space: &SearchSpace,
    basis: &CommutantBasis,
    n: usize,
    first_value: i64,
) -> Vec<ModularInvariant> {
    let s_len = basis.support.len();
    let mut partial = vec![Rational::zero(); s_len];
    let mut out = Vec::new();
    apply_level(space, 0, first_value, &mut partial);
    if feasible(space, 1, &partial) {
        dfs(space, basis, n, 1, &mut partial, &mut out);
    }
    out
}

fn apply_level(space: &SearchSpace, level: usize, value: i64, partial: &mut [Rational]) {
    if value == 0 {
        return;
    }
    let v = Rational::from_integer(value.into());
    for (c, b) in space.basis[level].iter().enumerate() {
        if !b.is_zero() {
            partial[c] += b * &v;
        }
    }
}

fn unapply_level(space: &SearchSpace, level: usize, value: i64, partial: &mut [Rational]) {
    if value == 0 {
        return;
    }
    let v = Rational::from_integer(value.into());
    for (c, b) in space.basis[level].iter().enumerate() {
        if !b.is_zero() {
            partial[c] -= b * &v;
        }
    }
}

fn feasible(space: &SearchSpace, level: usize, partial: &[Rational]) -> bool {
    for c in 0..partial.len() {
        let min = &partial[c] + &space.rem_min[level][c];
        if min > Rational::from_integer(space.hi[c].into()) {
            return false;
        }
        let max = &partial[c] + &space.rem_max[level][c];
        if max < Rational::from_integer(space.lo[c].into()) {
            return false;
        }
    }
    true
}

fn dfs(
    space: &SearchSpace,
    basis: &CommutantBasis,
    n: usize,
    level: usize,
    partial: &mut Vec<Rational>,
    out: &mut Vec<ModularInvariant>,
) {
    if level == space.basis.len() {
        // Leaf: all coordinates must be integers inside their bounds.
        let mut z = vec![vec![0i64; n]; n];
        for (idx, &coord) in basis.support.iter().enumerate() {
            let v = &partial[idx];
            if !v.is_integer() {
                return;
            }
            let Some(vi) = v.to_integer().to_i64() else { return };
            if vi < space.lo[idx] || vi > space.hi[idx] {
                return;
            }
            z[coord / n][coord % n] = vi;
        }
        out.push(ModularInvariant::new(z));
        return;
    }
    for v in space.var_lo[level]..=space.var_hi[level] {
        apply_level(space, level, v, partial);
        if feasible(space, level + 1, partial) {
            dfs(space, basis, n, level + 1, partial, out);
        }
        unapply_level(space, level, v, partial);
    }
}

/// Evaluation of the trace theorems on one invariant.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub exp: ExpMultiset,
    /// number of simple modules, tr Z
    pub trace: i64,
    /// number of simple bimodules, tr(Z Z^t)
    pub trace_zzt: i64,
    /// nonzero entries of Z with multiplicity: the matrix-block sizes of
    /// the bimodule algebra
    pub bimodule_algebra_dims: Vec<i64>,
    pub physical: bool,
}

impl InvariantReport {
    pub fn to_json(&self) -> Value {
        json!({
            "exp": self.exp.to_json(),
            "trace": self.trace,
            "trace_ZZt": self.trace_zzt,
            "blocks": self.bimodule_algebra_dims,
            "physical": self.physical,
        })
    }
}

pub fn report(inv: &ModularInvariant, _md: &ModularData) -> InvariantReport {
    let stats = exp_of(&inv.z);
    let mut blocks: Vec<i64> = inv.z.iter().flatten().copied().filter(|&v| v != 0).collect();
    blocks.sort_unstable();
    InvariantReport {
        exp: stats.exp,
        trace: stats.trace,
        trace_zzt: stats.trace_zzt,
        bimodule_algebra_dims: blocks,
        physical: inv.physical,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::{gen_named, gen_pointed, gen_sl2};

    fn enumerate_default(md: &ModularData) -> Vec<ModularInvariant> {
        let basis = commutant(md);
        enumerate(md, &basis, &SearchOptions::default()).unwrap()
    }

    #[test]
    fn trivial_category_commutant() {
        let md = gen_sl2(0);
        let basis = commutant(&md);
        assert_eq!(basis.dimension(), 1);
        let mats = basis.matrices();
        assert_eq!(*mats[0].at(0, 0), crate::cyclo::rat_int(1));
    }

    #[test]
    fn sl2_commutant_dimensions_match_oracle() {
        // Frozen from an independent numeric nullspace run (svd ranks).
        let expected = [(1u64, 1usize), (2, 1), (3, 1), (4, 2), (5, 1), (6, 2)];
        for (k, dim) in expected {
            let md = gen_sl2(k);
            let basis = commutant(&md);
            assert_eq!(basis.dimension(), dim, "level {k}");
            // Every basis matrix commutes exactly with S and diag T.
            let s = md.s();
            let dt = Matrix::diagonal(md.t());
            for b in basis.matrices() {
                let bc = b.map(|r| {
                    Cyclotomic::from_rational(r.clone())
                });
                assert!(bc.mul(s).eq(&s.mul(&bc)));
                assert!(bc.mul(&dt).eq(&dt.mul(&bc)));
            }
        }
    }

    #[test]
    fn level_one_has_only_the_identity() {
        let invs = enumerate_default(&gen_sl2(1));
        assert_eq!(invs.len(), 1);
        assert!(invs[0].is_identity());
    }

    #[test]
    fn level_four_finds_a_and_d() {
        let invs = enumerate_default(&gen_sl2(4));
        assert_eq!(invs.len(), 2);
        assert!(invs.iter().any(|z| z.is_identity()));
        let d = invs.iter().find(|z| !z.is_identity()).unwrap();
        assert_eq!(d.z[2][2], 2);
        assert_eq!(d.z[0][0], 1);
        assert_eq!(d.z[0][4], 1);
        assert_eq!(d.z[4][0], 1);
        assert_eq!(d.z[4][4], 1);
        let total: i64 = d.z.iter().flatten().sum();
        assert_eq!(total, 4 + 2);
    }

    #[test]
    fn pointed_z2_invariants() {
        let invs = enumerate_default(&gen_pointed(2, &[0, 1]).unwrap());
        assert_eq!(invs.len(), 1);
        assert!(invs[0].is_identity());
    }

    #[test]
    fn identity_is_always_found() {
        for md in [
            gen_sl2(2),
            gen_sl2(3),
            gen_named("ising").unwrap(),
            gen_named("fibonacci").unwrap(),
            gen_named("toric_code").unwrap(),
        ] {
            let invs = enumerate_default(&md);
            assert!(invs.iter().any(|z| z.is_identity()));
            for inv in &invs {
                assert!(inv.verify(&md));
                let rep = report(inv, &md);
                assert!(rep.trace <= rep.trace_zzt);
                assert_eq!(rep.trace, rep.exp.total());
                assert_eq!(
                    rep.trace_zzt,
                    rep.bimodule_algebra_dims.iter().map(|v| v * v).sum::<i64>()
                );
            }
        }
    }

    #[test]
    fn sl2_invariants_obey_the_bimodule_count_bound() {
        // tr ZZt <= (tr Z)^2 holds for invariants realized by an algebra
        // (simple bimodules embed in pairs of simple modules); on the sl2
        // family every lattice point is of that kind.
        for k in 0..=6u64 {
            for inv in enumerate_default(&gen_sl2(k)) {
                let rep = report(&inv, &gen_sl2(k));
                assert!(rep.trace <= rep.trace_zzt);
                assert!(rep.trace_zzt <= rep.trace * rep.trace, "level {k}: {:?}", inv.z);
            }
        }
    }

    #[test]
    fn toric_code_lattice_contains_non_realizable_points() {
        // The physical slice of the toric-code commutant has six lattice
        // points; the two pairing different condensates have tr Z = 1 but
        // tr ZZt = 4, so realizability is genuinely unmarked here.
        let md = gen_named("toric_code").unwrap();
        let invs = enumerate_default(&md);
        assert_eq!(invs.len(), 6);
        let heterotic: Vec<_> = invs
            .iter()
            .map(|z| report(z, &md))
            .filter(|r| r.trace == 1 && r.trace_zzt == 4)
            .collect();
        assert_eq!(heterotic.len(), 2);
    }

    #[test]
    fn toric_code_has_permutation_invariants_commuting_with_duality() {
        let md = gen_named("toric_code").unwrap();
        let scalars = md.derive_scalars().unwrap();
        let invs = enumerate_default(&md);
        let perms: Vec<Vec<usize>> =
            invs.iter().filter_map(|z| z.is_permutation()).collect();
        assert!(!perms.is_empty());
        for p in perms {
            for i in 0..md.rank() {
                // permutation commutes with charge conjugation
                assert_eq!(p[scalars.dual[i]], scalars.dual[p[i]]);
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic_across_jobs() {
        let md = gen_sl2(4);
        let basis = commutant(&md);
        let one = enumerate(&md, &basis, &SearchOptions { jobs: 1, ..Default::default() }).unwrap();
        let four = enumerate(&md, &basis, &SearchOptions { jobs: 4, ..Default::default() }).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn doubling_the_bound_adds_nothing_at_small_levels() {
        for k in 0..=4u64 {
            let md = gen_sl2(k);
            let basis = commutant(&md);
            let tight = enumerate(&md, &basis, &SearchOptions::default()).unwrap();
            let loose = enumerate(
                &md,
                &basis,
                &SearchOptions {
                    bound_factor: crate::cyclo::rat_int(2),
                    jobs: 1,
                },
            )
            .unwrap();
            assert_eq!(tight, loose, "level {k}");
        }
    }

    #[test]
    fn report_of_nonphysical_matrix() {
        let z = ModularInvariant::new(vec![vec![0, 0], vec![0, 1]]);
        assert!(!z.physical);
        let md = gen_pointed(2, &[0, 1]).unwrap();
        let rep = report(&z, &md);
        assert!(!rep.physical);
        assert_eq!(rep.trace, 1);
    }
}

//! Modular data (S, T) of a semisimple modular tensor category.
//!
//! The matrix S is stored unnormalized, `S_ij = tr(c_ji . c_ij)`, so that
//! every entry lives in a cyclotomic field; the normalized matrix S/D is
//! never materialized. All SL(2,Z) relations are checked in the
//! square-root-free projective form
//!
//! ```text
//!   S^2 = D^2 C,   (S diag T)^3 = p_+ S^2,   p_+ p_- = D^2,   C^2 = 1.
//! ```

use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclo::{Cyclotomic, Rational};
use crate::validation::ValidationReport;
use crate::json::{self, JsonError};
use crate::matrix::Matrix;

#[derive(Debug, Error)]
pub enum ModularError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("relation failure: {0}")]
    RelationFailure(String),
    #[error("degenerate form: det S = 0")]
    DegenerateForm,
    #[error("unknown built-in name: {0}")]
    UnknownName(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error(transparent)]
    Json(#[from] JsonError),
}

/// Unnormalized modular data: rank, labels, S-matrix and ribbon
/// eigenvalues (the diagonal of T). Index 0 is the tensor unit.
#[derive(Clone, Debug)]
pub struct ModularData {
    labels: Vec<String>,
    s: Matrix<Cyclotomic>,
    t: Vec<Cyclotomic>,
}

/// Scalars derived from validated modular data.
#[derive(Clone, Debug)]
pub struct DerivedScalars {
    pub d2: Cyclotomic,
    pub p_plus: Cyclotomic,
    pub p_minus: Cyclotomic,
    /// Charge conjugation, computed as S^2 / D^2 and verified to be a
    /// permutation matrix.
    pub c: Matrix<Cyclotomic>,
    /// The permutation i -> i_dual underlying `c`.
    pub dual: Vec<usize>,
}

impl ModularData {
    pub fn new(
        labels: Vec<String>,
        s: Matrix<Cyclotomic>,
        t: Vec<Cyclotomic>,
    ) -> Result<Self, ModularError> {
        let n = labels.len();
        if n == 0 {
            return Err(ModularError::Shape("rank must be positive".into()));
        }
        if s.rows() != n || s.cols() != n {
            return Err(ModularError::Shape(format!(
                "S must be {n}x{n}, got {}x{}",
                s.rows(),
                s.cols()
            )));
        }
        if t.len() != n {
            return Err(ModularError::Shape(format!("T must have length {n}, got {}", t.len())));
        }
        Ok(ModularData { labels, s, t })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn s(&self) -> &Matrix<Cyclotomic> {
        &self.s
    }

    pub fn t(&self) -> &[Cyclotomic] {
        &self.t
    }

    /// Quantum dimension of the i-th simple object, `d_i = S_0i`.
    pub fn dim(&self, i: usize) -> &Cyclotomic {
        self.s.at(0, i)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.rank();
        let mut report = ValidationReport::default();
        report.push("shape", true, None);

        let mut symmetric = true;
        let mut witness = None;
        'sym: for i in 0..n {
            for j in i + 1..n {
                if self.s.at(i, j) != self.s.at(j, i) {
                    symmetric = false;
                    witness = Some(format!("S[{i}][{j}] != S[{j}][{i}]"));
                    break 'sym;
                }
            }
        }
        report.push("s_symmetric", symmetric, witness);

        report.push("s_unit_entry", self.s.at(0, 0).is_one(), None);
        let zero_dim = (0..n).find(|&i| self.s.at(0, i).is_zero());
        report.push(
            "dims_nonzero",
            zero_dim.is_none(),
            zero_dim.map(|i| format!("dim(U_{i}) = 0")),
        );
        report.push("det_s_nonzero", !self.s.det().is_zero(), None);
        report.push("theta_unit", self.t[0].is_one(), None);
        let bad_theta = (0..n).find(|&i| !self.t[i].is_root_of_unity());
        report.push(
            "theta_roots_of_unity",
            bad_theta.is_none(),
            bad_theta.map(|i| format!("theta_{i} is not a root of unity")),
        );

        if report.all_passed() {
            match self.derive_scalars() {
                Ok(_) => report.push("modular_relations", true, None),
                Err(ModularError::RelationFailure(w)) => {
                    report.push("modular_relations", false, Some(w))
                }
                Err(e) => report.push("modular_relations", false, Some(e.to_string())),
            }
        }
        report
    }

    /// D^2, the Gauss sums p+- and charge conjugation, asserting the
    /// projective modular relations along the way.
    pub fn derive_scalars(&self) -> Result<DerivedScalars, ModularError> {
        let n = self.rank();
        let mut d2 = Cyclotomic::zero();
        let mut p_plus = Cyclotomic::zero();
        let mut p_minus = Cyclotomic::zero();
        for i in 0..n {
            let di2 = self.dim(i).mul(self.dim(i));
            d2 = d2.add(&di2);
            p_plus = p_plus.add(&self.t[i].mul(&di2));
            let ti_inv = self.t[i]
                .inverse()
                .map_err(|_| ModularError::RelationFailure("theta_i = 0".into()))?;
            p_minus = p_minus.add(&ti_inv.mul(&di2));
        }
        if d2.is_zero() {
            return Err(ModularError::RelationFailure("D^2 = 0".into()));
        }
        let d2_inv = d2.inverse().expect("nonzero");
        let s2 = self.s.mul(&self.s);
        let c = s2.scale(&d2_inv);
        let dual = c
            .is_permutation()
            .ok_or_else(|| ModularError::RelationFailure("S^2 / D^2 is not a permutation".into()))?;
        if !c.mul(&c).eq(&Matrix::identity(n)) {
            return Err(ModularError::RelationFailure("C^2 != 1".into()));
        }
        // (S diag T)^3 = p_+ S^2
        let st = self.s.mul(&Matrix::diagonal(&self.t));
        let st3 = st.mul(&st).mul(&st);
        if !st3.eq(&s2.scale(&p_plus)) {
            return Err(ModularError::RelationFailure("(S diag T)^3 != p_plus S^2".into()));
        }
        if p_plus.mul(&p_minus) != d2 {
            return Err(ModularError::RelationFailure("p_plus p_minus != D^2".into()));
        }
        // diag(T) commutes with C, i.e. theta is dual-invariant.
        let dt = Matrix::diagonal(&self.t);
        if !c.mul(&dt).eq(&dt.mul(&c)) {
            return Err(ModularError::RelationFailure("C diag T != diag T C".into()));
        }
        Ok(DerivedScalars { d2, p_plus, p_minus, c, dual })
    }

    /// Deligne product at the level of modular data.
    pub fn product(&self, other: &ModularData) -> Result<ModularData, ModularError> {
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}*{b}")))
            .collect();
        let s = self.s.kronecker(&other.s);
        let t = self
            .t
            .iter()
            .flat_map(|a| other.t.iter().map(move |b| a.mul(b)))
            .collect();
        let md = ModularData::new(labels, s, t)?;
        let report = md.validate();
        if let Some(fail) = report.first_failure() {
            return Err(ModularError::ValidationFailed(fail.name.to_string()));
        }
        Ok(md)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank(),
            "labels": self.labels,
            "S": json::cyc_matrix_to_value(&self.s),
            "T": json::cyc_vec_to_value(&self.t),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, ModularError> {
        let rank = v
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| ModularError::Shape("missing \"rank\"".into()))? as usize;
        let labels: Vec<String> = v
            .get("labels")
            .and_then(Value::as_array)
            .ok_or_else(|| ModularError::Shape("missing \"labels\"".into()))?
            .iter()
            .map(|x| x.as_str().map(str::to_string))
            .collect::<Option<_>>()
            .ok_or_else(|| ModularError::Shape("labels must be strings".into()))?;
        if labels.len() != rank {
            return Err(ModularError::Shape("rank disagrees with labels".into()));
        }
        let s = json::cyc_matrix_from_value(
            v.get("S").ok_or_else(|| ModularError::Shape("missing \"S\"".into()))?,
            "S",
        )?;
        let t = json::cyc_vec_from_value(
            v.get("T").ok_or_else(|| ModularError::Shape("missing \"T\"".into()))?,
            "T",
        )?;
        ModularData::new(labels, s, t)
    }
}

/// Quantum integer `[m]_q = (q^m - q^-m)/(q - q^-1)` for `q = zeta^2`
/// expressed inside `Q(zeta_order)`.
fn quantum_integer(order: u64, m: i64) -> Cyclotomic {
    let num = Cyclotomic::zeta_pow(order, 2 * m).sub(&Cyclotomic::zeta_pow(order, -2 * m));
    let den = Cyclotomic::zeta_pow(order, 2).sub(&Cyclotomic::zeta_pow(order, -2));
    num.div(&den).expect("q - q^-1 is nonzero")
}

/// Modular data of the affine sl(2) family at level k; rank k+1,
/// S_ab = [(a+1)(b+1)]_q with q a primitive 2(k+2)-th root of unity,
/// twists normalized so theta_0 = 1.
pub fn gen_sl2(k: u64) -> ModularData {
    let n = k + 1;
    let order = 4 * (k + 2);
    let labels = (0..n).map(|a| a.to_string()).collect();
    let s = Matrix::from_fn(n as usize, n as usize, |a, b| {
        quantum_integer(order, ((a + 1) * (b + 1)) as i64)
    });
    let t = (0..n)
        .map(|a| Cyclotomic::zeta_pow(order, (a * (a + 2)) as i64))
        .collect();
    let md = ModularData::new(labels, s, t).expect("shapes are consistent by construction");
    debug_assert!(md.validate().all_passed());
    md
}

/// Pointed modular data on Z_n from a quadratic form given by exponents:
/// `theta_a = zeta_{2n}^{q_a}`. Fails with DegenerateForm when the
/// associated bicharacter is degenerate.
pub fn gen_pointed(n: u64, q_exponents: &[i64]) -> Result<ModularData, ModularError> {
    if q_exponents.len() != n as usize {
        return Err(ModularError::Shape(format!(
            "expected {n} exponents, got {}",
            q_exponents.len()
        )));
    }
    let theta: Vec<Cyclotomic> = q_exponents
        .iter()
        .map(|&q| Cyclotomic::zeta_pow(2 * n, q))
        .collect();
    if !theta[0].is_one() {
        return Err(ModularError::Shape("theta_0 must be 1".into()));
    }
    for a in 0..n as usize {
        let neg = (n as usize - a) % n as usize;
        if theta[a] != theta[neg] {
            return Err(ModularError::Shape(format!("theta_{a} != theta_-{a}")));
        }
    }
    let beta = |a: usize, b: usize| -> Cyclotomic {
        let sum = (a + b) % n as usize;
        theta[sum]
            .div(&theta[a].mul(&theta[b]))
            .expect("twists are roots of unity")
    };
    // S_ab = tr(double braiding) = theta_{a-b} / (theta_a theta_b), i.e. the
    // inverse bicharacter; the dual enters through the trace closure.
    let s = Matrix::from_fn(n as usize, n as usize, |a, b| {
        beta(a, b).inverse().expect("root of unity")
    });
    if s.det().is_zero() {
        return Err(ModularError::DegenerateForm);
    }
    let labels = (0..n).map(|a| a.to_string()).collect();
    let md = ModularData::new(labels, s, theta)?;
    let report = md.validate();
    if let Some(fail) = report.first_failure() {
        // A symmetric exponent list that is not an actual quadratic form
        // shows up here as a failed modular relation.
        return Err(ModularError::ValidationFailed(fail.name.to_string()));
    }
    Ok(md)
}

/// All nondegenerate quadratic forms on Z_n, as exponent vectors suitable
/// for [`gen_pointed`]: `q_t(a) = t a^2 mod 2n` with t odd for even n and
/// t even for odd n, gcd(t, n) = 1.
pub fn pointed_forms(n: u64) -> Vec<Vec<i64>> {
    let mut forms = Vec::new();
    for t in 0..2 * n {
        if n % 2 == 0 && t % 2 == 0 {
            continue; // not well defined on Z_n
        }
        if n % 2 == 1 && t % 2 == 1 {
            continue;
        }
        if num_integer::gcd(t, n) != 1 {
            continue; // degenerate bicharacter
        }
        forms.push((0..n).map(|a| ((t * a * a) % (2 * n)) as i64).collect());
    }
    forms
}

pub fn gen_named(name: &str) -> Result<ModularData, ModularError> {
    let md = match name {
        "trivial" => gen_sl2(0),
        "semion" => gen_pointed(2, &[0, 1])?,
        "fibonacci" => {
            // Golden ratio as -zeta_5^2 - zeta_5^3; twist of the tau anyon
            // is a primitive fifth root of unity.
            let d = Cyclotomic::zeta_pow(5, 2).add(&Cyclotomic::zeta_pow(5, 3)).neg();
            let s = Matrix::from_rows(vec![
                vec![Cyclotomic::one(), d.clone()],
                vec![d, Cyclotomic::from_integer(-1)],
            ]);
            let t = vec![Cyclotomic::one(), Cyclotomic::zeta_pow(5, 2)];
            ModularData::new(vec!["1".into(), "tau".into()], s, t)?
        }
        "ising" => {
            let sq2 = Cyclotomic::zeta(8).add(&Cyclotomic::zeta_pow(8, -1));
            let one = Cyclotomic::one;
            let s = Matrix::from_rows(vec![
                vec![one(), sq2.clone(), one()],
                vec![sq2.clone(), Cyclotomic::zero(), sq2.neg()],
                vec![one(), sq2.neg(), one()],
            ]);
            let t = vec![one(), Cyclotomic::zeta(16), Cyclotomic::from_integer(-1)];
            ModularData::new(vec!["1".into(), "sigma".into(), "psi".into()], s, t)?
        }
        "toric_code" => {
            // Pointed on Z_2 x Z_2 with the hyperbolic form; basis 1, e, m, em.
            let q = |a: usize, b: usize| -> Cyclotomic {
                if a * b % 2 == 1 {
                    Cyclotomic::from_integer(-1)
                } else {
                    Cyclotomic::one()
                }
            };
            let elems = [(0usize, 0usize), (1, 0), (0, 1), (1, 1)];
            let s = Matrix::from_fn(4, 4, |i, j| {
                let (a1, b1) = elems[i];
                let (a2, b2) = elems[j];
                // beta(x, y) = q(x+y) / (q(x) q(y))
                q((a1 + a2) % 2, (b1 + b2) % 2)
                    .div(&q(a1, b1).mul(&q(a2, b2)))
                    .expect("signs")
            });
            let t = elems.iter().map(|&(a, b)| q(a, b)).collect();
            ModularData::new(
                vec!["1".into(), "e".into(), "m".into(), "em".into()],
                s,
                t,
            )?
        }
        other => return Err(ModularError::UnknownName(other.to_string())),
    };
    let report = md.validate();
    debug_assert!(report.all_passed(), "built-in {name} failed validation");
    Ok(md)
}

/// Dimensions as certified-positive reals; None when some dimension cannot
/// be certified real and positive (then the data is outside the unitary
/// conventions the enumeration relies on).
pub fn certified_positive_dims(md: &ModularData) -> Option<Vec<Rational>> {
    let mut out = Vec::with_capacity(md.rank());
    for i in 0..md.rank() {
        let d = md.dim(i);
        if crate::embed::certify_positive_real(d, 240) != Some(true) {
            return None;
        }
        out.push(crate::embed::real_upper_bound(d, 60).expect("real checked above"));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{rat, rat_int};
    use crate::embed;

    #[test]
    fn sl2_level_one_self_validates() {
        let md = gen_sl2(1);
        assert_eq!(md.rank(), 2);
        assert!(md.validate().all_passed());
        // S_11 = [4]_q with q = exp(i pi / 3) is exactly -1.
        assert_eq!(*md.s().at(1, 1), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn sl2_levels_validate_and_match_numeric_global_dimension() {
        // (k+2) / (2 sin^2(pi/(k+2))), frozen at 50 digits.
        let expected = [
            (1u64, "2.0"),
            (2, "4.0"),
            (3, "7.2360679774997896964091736687312762354406183596115"),
            (4, "12.0"),
            (5, "18.591793886479544749144448350063698689721874495699"),
            (6, "27.313708498984760390413509793677584628557375003016"),
            (7, "38.468844766858637031078023134561777726464487096138"),
            (8, "52.360679774997896964091736687312762354406183596115"),
        ];
        for (k, decimal_str) in expected {
            let md = gen_sl2(k);
            assert!(md.validate().all_passed(), "level {k} failed validation");
            let d2 = md.derive_scalars().unwrap().d2;
            let e = embed::embed(&d2, 45);
            let reference = embed::decimal(decimal_str);
            assert!(
                num_traits::Signed::abs(&(e.re.clone() - reference)) < rat(1, 1_000_000_000),
                "level {k}: D^2 enclosure {:?} disagrees with reference",
                e.re
            );
            assert!(num_traits::Signed::abs(&e.im) <= e.rad);
        }
    }

    #[test]
    fn sl2_level_zero_is_trivial() {
        let md = gen_sl2(0);
        assert_eq!(md.rank(), 1);
        assert!(md.s().at(0, 0).is_one());
        assert!(md.t()[0].is_one());
        let ds = md.derive_scalars().unwrap();
        assert!(ds.d2.is_one());
        assert!(ds.p_plus.is_one());
        assert!(ds.p_minus.is_one());
    }

    #[test]
    fn sl2_level_two_has_ising_dims() {
        let md = gen_sl2(2);
        let d1 = md.dim(1);
        assert_eq!(d1.mul(d1), Cyclotomic::from_integer(2));
        assert!(md.dim(2).is_one());
    }

    #[test]
    fn semion_scalars() {
        let md = gen_pointed(2, &[0, 1]).unwrap();
        let expect_s = Matrix::from_rows(vec![
            vec![Cyclotomic::one(), Cyclotomic::one()],
            vec![Cyclotomic::one(), Cyclotomic::from_integer(-1)],
        ]);
        assert!(md.s().eq(&expect_s));
        let ds = md.derive_scalars().unwrap();
        assert_eq!(ds.d2, Cyclotomic::from_integer(2));
        assert_eq!(ds.p_plus, Cyclotomic::one().add(&Cyclotomic::zeta(4)));
    }

    #[test]
    fn degenerate_pointed_form_is_rejected() {
        assert!(matches!(gen_pointed(2, &[0, 0]), Err(ModularError::DegenerateForm)));
    }

    #[test]
    fn pointed_rank_one_is_trivial() {
        let md = gen_pointed(1, &[0]).unwrap();
        assert_eq!(md.rank(), 1);
        assert!(md.validate().all_passed());
    }

    #[test]
    fn pointed_forms_enumeration() {
        // Z_2: t in {1, 3} -> semion and conjugate. Z_3: t in {2, 4}.
        assert_eq!(pointed_forms(2).len(), 2);
        assert_eq!(pointed_forms(3).len(), 2);
        assert_eq!(pointed_forms(4).len(), 4);
        for n in 1..=8u64 {
            for q in pointed_forms(n) {
                let md = gen_pointed(n, &q).unwrap_or_else(|e| {
                    panic!("form {q:?} on Z_{n} should be nondegenerate: {e}")
                });
                assert!(md.validate().all_passed());
            }
        }
    }

    #[test]
    fn named_builtins_validate() {
        for name in ["fibonacci", "ising", "toric_code", "semion", "trivial"] {
            let md = gen_named(name).unwrap();
            assert!(md.validate().all_passed(), "{name} failed validation");
        }
        assert!(matches!(gen_named("nonexistent"), Err(ModularError::UnknownName(_))));
    }

    #[test]
    fn semion_equals_pointed_construction() {
        let a = gen_named("semion").unwrap();
        let b = gen_pointed(2, &[0, 1]).unwrap();
        assert!(a.s().eq(b.s()));
        assert_eq!(a.t(), b.t());
    }

    #[test]
    fn fibonacci_dimension_is_golden_ratio() {
        let md = gen_named("fibonacci").unwrap();
        let e = embed::embed(md.dim(1), 45);
        let phi_ref = embed::decimal("1.618033988749894848204586834365638117720309179805762862");
        assert!(num_traits::Signed::abs(&(e.re - phi_ref)) < rat(1, 10i64.pow(18)));
    }

    #[test]
    fn validation_catches_corruption() {
        // Duplicated rows: singular S.
        let one = Cyclotomic::one;
        let s = Matrix::from_rows(vec![vec![one(), one()], vec![one(), one()]]);
        let md = ModularData::new(
            vec!["a".into(), "b".into()],
            s,
            vec![one(), one()],
        )
        .unwrap();
        let report = md.validate();
        assert!(!report.all_passed());
        assert!(report.checks.iter().any(|c| c.name == "det_s_nonzero" && !c.passed));

        // Ising with a zeroed twist entry fails the root-of-unity check.
        let ising = gen_named("ising").unwrap();
        let mut t = ising.t().to_vec();
        t[1] = Cyclotomic::zero();
        let bad = ModularData::new(ising.labels().to_vec(), ising.s().clone(), t).unwrap();
        let report = bad.validate();
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "theta_roots_of_unity" && !c.passed));
    }

    #[test]
    fn product_with_trivial_is_identity() {
        let fib = gen_named("fibonacci").unwrap();
        let triv = gen_sl2(0);
        let prod = fib.product(&triv).unwrap();
        assert!(prod.s().eq(fib.s()));
        assert_eq!(prod.t(), fib.t());
    }

    #[test]
    fn product_scalars_are_multiplicative() {
        let semion = gen_named("semion").unwrap();
        let fib = gen_named("fibonacci").unwrap();
        for (a, b) in [(&semion, &semion), (&fib, &fib), (&semion, &fib)] {
            let p = a.product(b).unwrap();
            let (da, db, dp) = (
                a.derive_scalars().unwrap(),
                b.derive_scalars().unwrap(),
                p.derive_scalars().unwrap(),
            );
            assert_eq!(dp.d2, da.d2.mul(&db.d2));
            assert_eq!(dp.p_plus, da.p_plus.mul(&db.p_plus));
            assert_eq!(dp.p_minus, da.p_minus.mul(&db.p_minus));
            assert!(!p.s().det().is_zero());
        }
        let ss = semion.product(&semion).unwrap();
        assert_eq!(ss.rank(), 4);
        assert_eq!(ss.derive_scalars().unwrap().d2, Cyclotomic::from_integer(4));
    }

    #[test]
    fn mtc_json_round_trip() {
        let md = gen_named("ising").unwrap();
        let v = md.to_json();
        let back = ModularData::from_json(&v).unwrap();
        assert!(md.s().eq(back.s()));
        assert_eq!(md.t(), back.t());
        assert_eq!(md.labels(), back.labels());
        assert_eq!(json::to_canonical_string(&v), json::to_canonical_string(&back.to_json()));
    }

    #[test]
    fn sl2_dims_are_positive() {
        for k in 0..=6 {
            let md = gen_sl2(k);
            let dims = certified_positive_dims(&md).expect("sl2 dims are positive");
            assert_eq!(dims.len(), (k + 1) as usize);
            assert!(dims.iter().all(|d| *d > rat_int(0)));
        }
    }
}

//! Built-in Hopf algebras and quasitriangular structures.
//!
//! Cyclic group algebras live in the group basis (so the classical
//! integral is `sum_g g` and `eps(mu) = n`); their function-algebra duals
//! live in the idempotent basis, where R-matrices are plain bicharacter
//! tables. The double of an abelian group is realized as the function
//! algebra on `A x A` with the hyperbolic bicharacter.

use crate::cyclo::{rat, Cyclotomic, Rational};
use crate::matrix::Matrix;

use super::{
    AlgebraSC, CoalgebraSC, HopfAlgebraSC, HopfError, QuasiTriangular, Representation, Tensor3,
};

/// Group algebra k[Z_n] in the group basis {1, g, ..., g^(n-1)}.
pub fn group_algebra(n: u64) -> HopfAlgebraSC {
    let n = n as usize;
    let m = Tensor3::from_fn(n, |a, b, k| {
        if (a + b) % n == k {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    });
    let mut eta = vec![Cyclotomic::zero(); n];
    eta[0] = Cyclotomic::one();
    let delta = Tensor3::from_fn(n, |a, j, k| {
        if j == a && k == a {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    });
    let eps = vec![Cyclotomic::one(); n];
    let antipode = Matrix::from_fn(n, n, |a, j| {
        if (a + j) % n == 0 {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    });
    HopfAlgebraSC {
        basis: (0..n).map(|a| format!("g^{a}")).collect(),
        algebra: AlgebraSC { dim: n, m, eta },
        coalgebra: CoalgebraSC { dim: n, delta, eps },
        antipode,
    }
}

/// Function algebra Fun(Z_n) in the idempotent basis {d_0, ..., d_(n-1)}.
pub fn dual_group_algebra(n: u64) -> HopfAlgebraSC {
    let n = n as usize;
    let m = Tensor3::from_fn(n, |a, b, k| {
        if a == b && a == k {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    });
    let eta = vec![Cyclotomic::one(); n];
    let delta = Tensor3::from_fn(n, |c, a, b| {
        if (a + b) % n == c {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    });
    let mut eps = vec![Cyclotomic::zero(); n];
    eps[0] = Cyclotomic::one();
    let antipode = Matrix::from_fn(n, n, |a, j| {
        if (a + j) % n == 0 {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    });
    HopfAlgebraSC {
        basis: (0..n).map(|a| format!("d{a}")).collect(),
        algebra: AlgebraSC { dim: n, m, eta },
        coalgebra: CoalgebraSC { dim: n, delta, eps },
        antipode,
    }
}

/// Bicharacter R-matrix on Fun(Z_n): `R = sum zeta_n^(t a b) d_a (x) d_b`.
/// Factorizable iff gcd(2t, n) = 1.
pub fn fun_zn_r(n: u64, t: i64) -> QuasiTriangular {
    let nn = n as usize;
    let r = Matrix::from_fn(nn, nn, |a, b| {
        Cyclotomic::zeta_pow(n, t * (a as i64) * (b as i64))
    });
    let ribbon = (0..nn)
        .map(|a| Cyclotomic::zeta_pow(n, -t * (a as i64) * (a as i64)))
        .collect();
    QuasiTriangular { r, ribbon: Some(ribbon) }
}

/// The same bicharacter structure transported to the group basis of
/// k[Z_n] through the Fourier transform `d_c = (1/n) sum_a zeta^(-ca) g^a`.
pub fn group_zn_r(n: u64, t: i64) -> QuasiTriangular {
    let nn = n as usize;
    let inv_n = rat(1, n as i64);
    let inv_n2 = rat(1, (n * n) as i64);
    let r = Matrix::from_fn(nn, nn, |a, b| {
        // (1/n^2) sum_{c,d} zeta^(tcd - ca - db)
        let mut acc = Cyclotomic::zero();
        for c in 0..n as i64 {
            for dd in 0..n as i64 {
                acc = acc.add(&Cyclotomic::zeta_pow(
                    n,
                    t * c * dd - c * a as i64 - dd * b as i64,
                ));
            }
        }
        acc.scale(&inv_n2)
    });
    let ribbon = (0..nn)
        .map(|a| {
            let mut acc = Cyclotomic::zero();
            for c in 0..n as i64 {
                acc = acc.add(&Cyclotomic::zeta_pow(n, -t * c * c - c * a as i64));
            }
            acc.scale(&inv_n)
        })
        .collect();
    QuasiTriangular { r, ribbon: Some(ribbon) }
}

/// `R = 1 (x) 1` with ribbon 1: the trivial (symmetric) structure.
pub fn trivial_r(h: &HopfAlgebraSC) -> QuasiTriangular {
    let d = h.dim();
    let r = Matrix::from_fn(d, d, |i, j| h.algebra.eta[i].mul(&h.algebra.eta[j]));
    QuasiTriangular { r, ribbon: Some(h.algebra.eta.clone()) }
}

/// The double of Z_n as Fun(Z_n x Z_n) with the hyperbolic bicharacter
/// `beta((a,c),(a',c')) = zeta_n^(a c')`; always factorizable.
pub fn double_zn(n: u64) -> (HopfAlgebraSC, QuasiTriangular) {
    let nn = n as usize;
    let d = nn * nn; // basis d(a,c) at index a*n + c
    let m = Tensor3::from_fn(d, |x, y, k| {
        if x == y && x == k {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    });
    let eta = vec![Cyclotomic::one(); d];
    let delta = Tensor3::from_fn(d, |x, y, z| {
        let (a, c) = (x / nn, x % nn);
        let (a1, c1) = (y / nn, y % nn);
        let (a2, c2) = (z / nn, z % nn);
        if (a1 + a2) % nn == a && (c1 + c2) % nn == c {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    });
    let mut eps = vec![Cyclotomic::zero(); d];
    eps[0] = Cyclotomic::one();
    let antipode = Matrix::from_fn(d, d, |x, y| {
        let (a, c) = (x / nn, x % nn);
        let (a1, c1) = (y / nn, y % nn);
        if (a + a1) % nn == 0 && (c + c1) % nn == 0 {
            Cyclotomic::one()
        } else {
            Cyclotomic::zero()
        }
    });
    let h = HopfAlgebraSC {
        basis: (0..nn)
            .flat_map(|a| (0..nn).map(move |c| format!("d({a},{c})")))
            .collect(),
        algebra: AlgebraSC { dim: d, m, eta },
        coalgebra: CoalgebraSC { dim: d, delta, eps },
        antipode,
    };
    let r = Matrix::from_fn(d, d, |x, y| {
        let (a, _c) = (x / nn, x % nn);
        let (_a1, c1) = (y / nn, y % nn);
        Cyclotomic::zeta_pow(n, (a * c1) as i64)
    });
    let ribbon = (0..d)
        .map(|x| {
            let (a, c) = (x / nn, x % nn);
            Cyclotomic::zeta_pow(n, -((a * c) as i64))
        })
        .collect();
    (h, QuasiTriangular { r, ribbon: Some(ribbon) })
}

/// Sweedler's four-dimensional Hopf algebra, basis {1, g, x, gx} with
/// g^2 = 1, x^2 = 0, xg = -gx, Delta(g) = g(x)g, Delta(x) = x(x)1 + g(x)x.
pub fn sweedler() -> HopfAlgebraSC {
    let d = 4;
    let one = Cyclotomic::one;
    let neg = || Cyclotomic::from_integer(-1);
    // products: table[i][j] = (sign, index) or None for zero
    let table: [[Option<(i64, usize)>; 4]; 4] = [
        [Some((1, 0)), Some((1, 1)), Some((1, 2)), Some((1, 3))],
        [Some((1, 1)), Some((1, 0)), Some((1, 3)), Some((1, 2))],
        [Some((1, 2)), Some((-1, 3)), None, None],
        [Some((1, 3)), Some((-1, 2)), None, None],
    ];
    let m = Tensor3::from_fn(d, |i, j, k| match table[i][j] {
        Some((s, idx)) if idx == k => {
            if s == 1 {
                one()
            } else {
                neg()
            }
        }
        _ => Cyclotomic::zero(),
    });
    let mut eta = vec![Cyclotomic::zero(); d];
    eta[0] = one();
    let mut delta = Tensor3::zero(d);
    // Delta(1) = 1(x)1, Delta(g) = g(x)g
    *delta.at_mut(0, 0, 0) = one();
    *delta.at_mut(1, 1, 1) = one();
    // Delta(x) = x(x)1 + g(x)x
    *delta.at_mut(2, 2, 0) = one();
    *delta.at_mut(2, 1, 2) = one();
    // Delta(gx) = Delta(g)Delta(x) = gx(x)g + 1(x)gx
    *delta.at_mut(3, 3, 1) = one();
    *delta.at_mut(3, 0, 3) = one();
    let eps = vec![one(), one(), Cyclotomic::zero(), Cyclotomic::zero()];
    // S(g) = g, S(x) = -gx; the antihomomorphism property gives
    // S(gx) = S(x)S(g) = (-gx)g = -g(xg) = g(gx) = x.
    let mut antipode = Matrix::zero(d, d);
    *antipode.at_mut(0, 0) = one();
    *antipode.at_mut(1, 1) = one();
    *antipode.at_mut(2, 3) = neg();
    *antipode.at_mut(3, 2) = one();
    HopfAlgebraSC {
        basis: vec!["1".into(), "g".into(), "x".into(), "gx".into()],
        algebra: AlgebraSC { dim: d, m, eta },
        coalgebra: CoalgebraSC { dim: d, delta, eps },
        antipode,
    }
}

/// The one-parameter family of R-matrices on the Sweedler algebra,
/// `R_t = R_0 + t/2 (x(x)x - x(x)gx + gx(x)x + gx(x)gx)` with
/// `R_0 = (1(x)1 + 1(x)g + g(x)1 - g(x)g)/2`. For t = 0 the structure is
/// triangular and `v = 1` is a ribbon element; for t != 0 there is no
/// ribbon element (the center is trivial).
pub fn sweedler_r(t: Rational) -> QuasiTriangular {
    let mut r = Matrix::zero(4, 4);
    let half = rat(1, 2);
    *r.at_mut(0, 0) = Cyclotomic::from_rational(half.clone());
    *r.at_mut(0, 1) = Cyclotomic::from_rational(half.clone());
    *r.at_mut(1, 0) = Cyclotomic::from_rational(half.clone());
    *r.at_mut(1, 1) = Cyclotomic::from_rational(rat(-1, 2));
    let ribbon = if num_traits::Zero::is_zero(&t) {
        let mut v = vec![Cyclotomic::zero(); 4];
        v[0] = Cyclotomic::one();
        Some(v)
    } else {
        None
    };
    let t2 = Cyclotomic::from_rational(t * half);
    *r.at_mut(2, 2) = t2.clone();
    *r.at_mut(2, 3) = t2.neg();
    *r.at_mut(3, 2) = t2.clone();
    *r.at_mut(3, 3) = t2;
    QuasiTriangular { r, ribbon }
}

/// The trivial one-dimensional Hopf algebra.
pub fn unit_hopf() -> (HopfAlgebraSC, QuasiTriangular) {
    let h = group_algebra(1);
    let qt = trivial_r(&h);
    (h, qt)
}

/// Simple modules of k[Z_n] in the group basis: g acts by zeta_n^a.
pub fn group_zn_simple(n: u64, a: i64) -> Representation {
    let rho = (0..n as usize)
        .map(|j| {
            Matrix::from_rows(vec![vec![Cyclotomic::zeta_pow(n, a * j as i64)]])
        })
        .collect();
    Representation { dim: 1, rho }
}

/// Simple modules of Fun(Z_n): d_c acts on the line of degree a by [c = a].
pub fn fun_zn_simple(n: u64, a: usize) -> Representation {
    let rho = (0..n as usize)
        .map(|c| {
            Matrix::from_rows(vec![vec![if c == a % n as usize {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }]])
        })
        .collect();
    Representation { dim: 1, rho }
}

/// Simple modules of the double of Z_n in the Fun(Z_n x Z_n) picture:
/// one line per point (a, c), with d(x) acting as the indicator of the
/// point.
pub fn double_zn_simple(n: u64, a: usize, c: usize) -> Representation {
    let nn = n as usize;
    let point = (a % nn) * nn + (c % nn);
    let rho = (0..nn * nn)
        .map(|x| {
            Matrix::from_rows(vec![vec![if x == point {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }]])
        })
        .collect();
    Representation { dim: 1, rho }
}

/// The regular representation.
pub fn regular_representation(h: &HopfAlgebraSC) -> Representation {
    let d = h.dim();
    let rho = (0..d).map(|i| h.algebra.left_mul_matrix(&h.basis_element(i))).collect();
    Representation { dim: d, rho }
}

/// The two 1-dimensional Sweedler modules: trivial and sign.
pub fn sweedler_simple(sign: bool) -> Representation {
    let g = if sign {
        Cyclotomic::from_integer(-1)
    } else {
        Cyclotomic::one()
    };
    let rho = vec![
        Matrix::from_rows(vec![vec![Cyclotomic::one()]]),
        Matrix::from_rows(vec![vec![g]]),
        Matrix::from_rows(vec![vec![Cyclotomic::zero()]]),
        Matrix::from_rows(vec![vec![Cyclotomic::zero()]]),
    ];
    Representation { dim: 1, rho }
}

/// Named registry used by the CLI `builtin` verb.
pub fn named(name: &str) -> Result<(HopfAlgebraSC, Option<QuasiTriangular>), HopfError> {
    let (h, qt) = match name {
        "unit" => {
            let (h, qt) = unit_hopf();
            (h, Some(qt))
        }
        "group_z2" => (group_algebra(2), None),
        "group_z3" => (group_algebra(3), None),
        "group_z4" => (group_algebra(4), None),
        "group_z2_trivial" => {
            let h = group_algebra(2);
            let qt = trivial_r(&h);
            (h, Some(qt))
        }
        "group_z2_sign" => (group_algebra(2), Some(group_zn_r(2, 1))),
        "dual_group_z2" => (dual_group_algebra(2), None),
        "dual_group_z3" => (dual_group_algebra(3), None),
        "z2_sign_anyon" => (dual_group_algebra(2), Some(fun_zn_r(2, 1))),
        "z3_anyon" => (dual_group_algebra(3), Some(fun_zn_r(3, 1))),
        "z3_anyon_conj" => (dual_group_algebra(3), Some(fun_zn_r(3, 2))),
        "z5_anyon" => (dual_group_algebra(5), Some(fun_zn_r(5, 1))),
        "z5_anyon_conj" => (dual_group_algebra(5), Some(fun_zn_r(5, 4))),
        "double_z2" => {
            let (h, qt) = double_zn(2);
            (h, Some(qt))
        }
        "double_z3" => {
            let (h, qt) = double_zn(3);
            (h, Some(qt))
        }
        "sweedler" => (sweedler(), None),
        "sweedler_triangular" => (sweedler(), Some(sweedler_r(Rational::from_integer(0.into())))),
        "sweedler_r1" => (sweedler(), Some(sweedler_r(Rational::from_integer(1.into())))),
        other => return Err(HopfError::UnknownName(other.to_string())),
    };
    Ok((h, qt))
}

pub const NAMED_BUILTINS: &[&str] = &[
    "unit",
    "group_z2",
    "group_z3",
    "group_z4",
    "group_z2_trivial",
    "group_z2_sign",
    "dual_group_z2",
    "dual_group_z3",
    "z2_sign_anyon",
    "z3_anyon",
    "z3_anyon_conj",
    "z5_anyon",
    "z5_anyon_conj",
    "double_z2",
    "double_z3",
    "sweedler",
    "sweedler_triangular",
    "sweedler_r1",
];

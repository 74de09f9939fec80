use tensorcat::coend::*;
use tensorcat::hopf::builtins::*;
use tensorcat::matrix::Matrix;
use tensorcat::modular::gen_pointed;

fn main() {
    for (name, n, t) in [("z3_anyon", 3u64, 1i64), ("z3_anyon_conj", 3, 2), ("z5_anyon", 5, 1), ("z5_anyon_conj", 5, 4)] {
        let (h, qt) = named(name).unwrap();
        let qt = qt.unwrap();
        let ce = build_coend(&h, &qt).unwrap();
        let data = sl2z_data(&ce).unwrap();
        let chis: Vec<_> = (0..n as usize)
            .map(|a| characters(&ce, &h, &qt, &fun_zn_simple(n, a), &format!("U{a}")).unwrap())
            .collect();
        let x = Matrix::from_fn(ce.dim, n as usize, |i, a| chis[a].chi[i].clone());
        let md = gen_pointed(n, &(0..n).map(|a| (2 * t * (a as i64) * (a as i64)).rem_euclid(2 * n as i64)).collect::<Vec<_>>()).unwrap();
        let tx = data.t.mul(&x);
        let t_ok = (0..n as usize).all(|a| (0..ce.dim).all(|i| tx.at(i, a) == &x.at(i, a).mul(&md.t()[a])));
        let sx = data.s.mul(&x);
        let c = express_in_basis(&x, &sx).expect("span");
        let s_p = md.s();
        let mut lambda = None;
        'f: for i in 0..n as usize { for j in 0..n as usize {
            if !s_p.at(i, j).is_zero() { lambda = Some(c.at(i, j).div(s_p.at(i, j)).unwrap()); break 'f; } } }
        let lam = lambda.unwrap();
        println!("{name}: T matches exactly: {t_ok}; S = lambda * pointed S with lambda={}: {}", lam, c.eq(&s_p.scale(&lam)));
    }
}

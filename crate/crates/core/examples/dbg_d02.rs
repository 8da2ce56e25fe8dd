use plethys::macdonald::*;
use plethys::ring::*;
use plethys::symfunc::*;

fn variant(h: &SymFunc, qt: &QtParams, x_var: usize, sminus: i64, splus: i64) -> SymFunc {
    let vars = h.vars().clone();
    let one = RatFunc::one(&vars);
    let x = MPoly::var(&vars, x_var).mul_rat(&rat_int(sminus));
    let x_inv = MPoly::var_pow(&vars, x_var, -1).mul_rat(&rat_int(splus));
    let plus_arg = PlethArg::from_poly(qt.m_poly().mul_ref(&x_inv));
    let minus_arg = PlethArg::from_poly(x);
    let g = gamma_minus(&one, &minus_arg, &gamma_plus(&one, &plus_arg, h));
    g.map_coeffs(|c| {
        let mut out = RatFunc::from_poly(c.num().coeff_of(x_var, 0));
        for (fac, e) in c.den_factors() {
            for _ in 0..e {
                out = out.div_ref(&RatFunc::from_poly(fac.clone())).unwrap();
            }
        }
        out
    })
}

fn main() {
    let store = TableStore::new();
    let xvars = VarSet::new(&["q", "t", "x"]);
    let qt = QtParams::plain(&xvars);
    let xv = xvars.index("x").unwrap();
    let tab = store.table(2).unwrap();
    for (i, mu) in tab.parts.iter().enumerate() {
        let h = tab.h_p[i].embed_coeffs(&xvars);
        for (sm, sp) in [(-1i64, 1i64), (1, 1)] {
            let dh = variant(&h, &qt, xv, sm, sp);
            // check proportionality: dh = c * h, print c
            let mu0 = h.terms().next().unwrap().0.clone();
            let ratio = dh.coeff(&mu0).div_ref(&h.coeff(&mu0)).unwrap().normalize();
            let prop = dh.equals(&h.scale(&ratio), EqMode::Exact);
            println!("mu={mu} (sm={sm},sp={sp}): proportional={prop} ratio={}", ratio);
        }
    }
    println!("psi[2]   = {}", psi_stat(&plethys::partitions::Partition::new(vec![2]), &qt));
    println!("psi[1,1] = {}", psi_stat(&plethys::partitions::Partition::new(vec![1,1]), &qt));
}

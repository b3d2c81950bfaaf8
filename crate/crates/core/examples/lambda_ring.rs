//! The λ-ring calculus on truncated series: Exp, Log and Pow.

use motivic_dt::coeff::{pochhammer, MotiveScalar};
use motivic_dt::series::{Grading, MSeries};

fn main() {
    let g = Grading::indexed(1, 5);
    let l = MotiveScalar::lefschetz();
    let one = MotiveScalar::one();

    // Exp(L y) = 1/(1 - L y)
    let f = MSeries::monomial(&g, &[1], l.clone()).unwrap();
    let e = f.exp_lambda().unwrap();
    for (exp, c) in e.terms() {
        println!("Exp(Ly): y^{}  {}", exp[0], c.display_l());
    }
    assert_eq!(e.log_lambda().unwrap(), f);

    // q-binomial theorem: Exp(x/(1-L)) = Σ x^n/(L)_n
    let arg = MSeries::monomial(&g, &[1], (&one - &l).inv().unwrap()).unwrap();
    let h = arg.exp_lambda().unwrap();
    for n in 0..=5 {
        assert_eq!(h.coeff(&[n]), pochhammer(&l, n).inv().unwrap());
    }
    println!("Exp(x/(1-L)) = Σ x^n/(L)_n holds to order 5");

    // Pow(1/(1-y), L) = Exp(L·Log(1/(1-y))) = 1/(1-Ly)
    let geometric = MSeries::geometric_factor(&g, &one, &[1], 1).unwrap();
    let p = geometric.pow_structure(&l).unwrap();
    assert_eq!(p, e);
    println!("Pow(1/(1-y), L) = 1/(1-Ly)");
}

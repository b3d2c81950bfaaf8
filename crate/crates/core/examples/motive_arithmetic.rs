//! Exact arithmetic in ℚ(L^½): GL motives, Pochhammer symbols, and the
//! two specializations (Euler number and point count over 𝔽_q).

use motivic_dt::coeff::{gl_motive, pochhammer, MotiveScalar};

fn main() {
    let l = MotiveScalar::lefschetz();
    for n in 0..=3 {
        let g = gl_motive(n);
        println!(
            "[GL_{n}] = {}   |GL_{n}(F_2)| = {}",
            g.display_l(),
            g.evaluate_at_prime_power(2).unwrap()
        );
    }

    let linv = MotiveScalar::v_pow(-2);
    let p = pochhammer(&linv, 3);
    println!("(L^-1)_3 = {}", p.display_l());

    // (1 - L^2)/(1 - L) has a removable pole at L^½ = 1
    let one = MotiveScalar::one();
    let x = &(&one - &l.pow(2)) / &(&one - &l);
    println!("{} at L^½ = 1: {}", x.display_l(), x.euler_value().unwrap());

    let half = MotiveScalar::v();
    println!("L^(1/2) at q = 2: {:?}", half.evaluate_at_prime_power(2));
    println!("psi_3(L^(1/2)) = {}", half.adams(3).display_l());
}

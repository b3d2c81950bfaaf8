//! Euler limits, MacMahon functions and Gopakumar–Vafa invariants.

use motivic_dt::dtinv::{
    euler_limit, gv_extract, macmahon_coefficients, macmahon_product, mckay_series,
    pt_euler_symbolic,
};
use motivic_dt::roots::{AffineRootSystem, StabilityMode};

fn main() {
    println!("M(q) = {:?}", macmahon_coefficients(6));

    let sys = AffineRootSystem::from_type("A2~").unwrap();
    let pt = euler_limit(&mckay_series(&sys, StabilityMode::Pt, 4).unwrap()).unwrap();
    assert_eq!(pt, macmahon_product(&sys, StabilityMode::Pt, 4).unwrap());
    println!("Euler limit of Z_PT for A2~ is ∏ M(Q^β, q) to order 4");

    let d4 = AffineRootSystem::from_type("D4~").unwrap();
    let table = gv_extract(&pt_euler_symbolic(&d4, 5).unwrap()).unwrap();
    for (beta, ns) in table.iter() {
        println!("D4~ GV: β = {beta:?}  n_g = {ns:?}");
    }
}

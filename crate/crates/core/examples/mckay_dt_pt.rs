//! PT, DT and NCDT series of a McKay quiver, and Z_DT = Z_PT · Z_Y.

use motivic_dt::dtinv::{hilbert_series_zy, mckay_series};
use motivic_dt::roots::{AffineRootSystem, StabilityMode};

fn main() {
    let sys = AffineRootSystem::from_type("A1~").unwrap();
    let n = 3;
    let pt = mckay_series(&sys, StabilityMode::Pt, n).unwrap();
    for (s, q, c) in pt.sq_terms().into_iter().take(8) {
        println!("Z_PT(-s,Q): s^{s} Q^{q:?}  {}", c.display_l());
    }
    let dt = mckay_series(&sys, StabilityMode::Dt, n).unwrap();
    let zy = hilbert_series_zy(sys.rank(), n).unwrap();
    assert_eq!(pt.mul(&zy).unwrap(), dt);
    println!("Z_DT = Z_PT · Z_Y to s-order {n}");

    let ncdt = mckay_series(&sys, StabilityMode::Ncdt, 2).unwrap();
    println!("Z_NCDT has {} terms to s-order 2", ncdt.sq_terms().len());
    println!("{}", ncdt.to_json());
}

//! The universal series A_U of a loop-double quiver and its DT
//! invariants, for the Jordan quiver and an affine quiver.

use motivic_dt::dtinv::{affine_grading, is_nonnegative, omega_extract, universal_series};
use motivic_dt::repcount::KacTable;
use motivic_dt::roots::AffineRootSystem;
use motivic_dt::series::Grading;

fn main() {
    let g = Grading::indexed(1, 3);
    let au = universal_series(&KacTable::jordan(&g), &g).unwrap();
    for (e, c) in au.terms() {
        println!("Jordan A_U: y^{}  {}", e[0], c.display_l());
    }

    let a2 = AffineRootSystem::from_type("A2~").unwrap();
    let g = affine_grading(&a2, 2);
    let au = universal_series(&KacTable::affine(&a2, &g), &g).unwrap();
    let omega = omega_extract(&au).unwrap();
    println!("A2~: {} nonzero Ω up to α₀ ≤ 2", omega.len());
    for (alpha, om) in omega.iter().filter(|(a, _)| a.entries()[0] == 1) {
        println!(
            "  Ω_{alpha} = {}  (non-negative: {})",
            om.display_l(),
            is_nonnegative(om)
        );
    }
}

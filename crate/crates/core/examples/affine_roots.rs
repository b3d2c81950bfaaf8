//! Affine ADE root systems and the McKay dictionary.

use motivic_dt::roots::{AffineRootSystem, StabilityMode};

fn main() {
    for tag in ["A1~", "A2~", "D4~", "E6~", "E7~", "E8~"] {
        let r = AffineRootSystem::from_type(tag).unwrap();
        println!(
            "{tag}: rank {}, δ = {}, |Δ°₊| = {}",
            r.rank(),
            r.delta(),
            r.finite_positive_roots().len()
        );
    }

    let g = AffineRootSystem::from_mckay_group("bintet").unwrap();
    println!("binary tetrahedral group ↦ {}", g.tag());

    let a1 = AffineRootSystem::from_type("A1~").unwrap();
    for root in a1.positive_roots_up_to(2) {
        println!("  {} {}", root.alpha, root.kind.tag());
    }
    for mode in [StabilityMode::Pt, StabilityMode::Dt, StabilityMode::Ncdt] {
        let sel: Vec<String> = a1
            .stability_select(mode, 1)
            .iter()
            .map(|r| r.alpha.to_string())
            .collect();
        println!("{mode} at s-order 1: {}", sel.join(" "));
    }
}

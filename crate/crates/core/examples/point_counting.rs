//! Finite-field oracles: preprojective varieties and the fibers of the
//! trace of the potential.

use num_bigint::BigInt;

use motivic_dt::quiver::{DimVector, Quiver};
use motivic_dt::repcount::{count_preprojective, potential_histogram};

fn main() {
    let jordan = Quiver::jordan();
    let two = DimVector::new(vec![2]);
    for q in [2, 3] {
        let r = count_preprojective(&jordan, &two, q).unwrap();
        println!("commuting 2×2 pairs over F_{q}: {} ({})", r.count, r.method);

        let hat = jordan.loop_double();
        let hist = potential_histogram(&hat, &two, q).unwrap();
        let diff = BigInt::from(hist[0]) - BigInt::from(hist[1]);
        let di = hat.cut_degree(&two).unwrap() as u32;
        println!("  #w⁻¹(0) - #w⁻¹(1) = {diff} = {q}^{di} · {}", r.count);
        assert_eq!(diff, BigInt::from(q).pow(di) * r.count);
    }
}

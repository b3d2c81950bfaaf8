//! Kac polynomials by counting absolutely indecomposable representations
//! over small fields and interpolating.

use num_bigint::BigInt;

use motivic_dt::quiver::{DimVector, Quiver};
use motivic_dt::repcount::{interpolate_kac, kac_bruteforce};

fn main() {
    let k = Quiver::kronecker();
    let alpha = DimVector::new(vec![1, 1]);
    let samples: Vec<(u64, BigInt)> = [2, 3, 4, 5]
        .iter()
        .map(|&q| (q, BigInt::from(kac_bruteforce(&k, &alpha, q).unwrap())))
        .collect();
    for (q, a) in &samples {
        println!("a_(1,1) over F_{q}: {a}");
    }
    let p = interpolate_kac(&samples, 1).unwrap();
    println!("a_(1,1)(q) = {}", p.display_in("q"));

    let j = Quiver::jordan();
    for n in 1..=2 {
        let a: Vec<u64> = [2, 3]
            .iter()
            .map(|&q| kac_bruteforce(&j, &DimVector::new(vec![n]), q).unwrap())
            .collect();
        println!("Jordan a_{n}(2), a_{n}(3) = {a:?}");
    }
}

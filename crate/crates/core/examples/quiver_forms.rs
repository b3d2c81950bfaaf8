//! Euler–Ringel forms, the loop-double construction and its cut.

use motivic_dt::quiver::{DimVector, Quiver};

fn main() {
    let k = Quiver::kronecker();
    let a = DimVector::new(vec![1, 0]);
    let b = DimVector::new(vec![0, 1]);
    println!("Kronecker: χ(e0,e1) = {}", k.euler_form(&a, &b).unwrap());
    println!("Kronecker: skew(e0,e1) = {}", k.skew_form(&a, &b).unwrap());

    let hat = k.loop_double();
    println!(
        "loop double: {} vertices, {} arrows, symmetric = {}",
        hat.quiver().vertex_count(),
        hat.quiver().arrows().len(),
        hat.quiver().is_symmetric()
    );
    let ab = DimVector::new(vec![1, 1]);
    println!(
        "χ_hat((1,1),(1,1)) = {}",
        hat.quiver().euler_form(&ab, &ab).unwrap()
    );
    println!("cut degree d_I(1,1) = {}", hat.cut_degree(&ab).unwrap());
    println!("quiver JSON: {}", k.to_json());
}

//! Smith normal form with transforms, and a kernel basis.

use cp2genus::materialize::{kernel_basis, snf, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = snf(&m);
    println!("invariant factors {:?}", s.invariant_factors());
    println!("U M V == D: {}", s.u.mul(&m).mul(&s.v) == s.d);
    let k = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
    println!("kernel of [[1,2,3],[2,4,6]]: {:?}", kernel_basis(&k));
}

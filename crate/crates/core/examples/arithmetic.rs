//! Exact arithmetic in quadratic fields and an exact kernel.

use arrlab::exactnum::{element_arithmetic, rational, ArithOp, ExactMatrix, FieldElement, QuadField};

fn main() -> arrlab::Result<()> {
    let gauss = QuadField::gaussian();
    let i = FieldElement::alpha(&gauss)?;
    let one = FieldElement::one(&gauss);
    let p = element_arithmetic(&(&one + &i), &(&one - &i), ArithOp::Mul)?;
    println!("(1+i)(1-i) = {p}");

    let golden = QuadField::golden();
    let phi = FieldElement::alpha(&golden)?;
    println!("phi^2 = {}   1/phi = {}", &phi * &phi, FieldElement::one(&golden).checked_div(&phi)?);

    let q = QuadField::rationals();
    let r = |n, d| FieldElement::from_rational(&q, rational(n, d));
    let m = ExactMatrix::from_rows(&q, 3, vec![vec![r(1, 1), r(2, 1), r(3, 1)], vec![r(2, 1), r(4, 1), r(6, 1)]])?;
    println!("rank {}, kernel:", m.rank());
    for v in m.kernel_basis() {
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        println!("  ({})", s.join(", "));
    }
    Ok(())
}

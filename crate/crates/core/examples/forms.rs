//! Bundle-valued forms: wedge signs, exterior derivative with Gaussian
//! weights, contraction by the tautological section, Berezin integral and
//! frame rotation.

use cone_thom::form::{ChartSpec, Form};
use cone_thom::scalar::{rational, Rational, Scalar, Variable};
use num_traits::{One, Zero};

fn main() -> cone_thom::Result<()> {
    let c = ChartSpec::new(2, 2)?;
    let (dx1, dx2) = (Form::dx(c, 1), Form::dx(c, 2));
    let (e1, e2) = (Form::e(c, 1), Form::e(c, 2));

    println!("dx2 ^ dx1 = {}", dx2.wedge(&dx1));
    println!("e1 ^ (dx1 e2) = {}", e1.wedge(&dx1.wedge(&e2)));
    println!(
        "(dy1 e1) ^ (dy2 e2) = {}",
        Form::dy(c, 1).wedge(&e1).wedge(&Form::dy(c, 2).wedge(&e2))
    );

    let x1 = Scalar::var(Variable::X(1));
    println!("d(x1 dx2) = {}", dx2.mul_scalar(&x1).exterior_d());
    println!("d(exp(-|y|^2/2)) = {}", Form::gaussian(c, 1).exterior_d());

    println!("v-contract (dx1 e1) = {}", dx1.wedge(&e1).contract_v());
    println!("v-contract (e1 e2) = {}", e1.wedge(&e2).contract_v());

    let top = dx1.mul_scalar(&x1).wedge(&e1.wedge(&e2));
    println!("Berezin of x1 dx1 e1e2 = {}", top.berezin());

    let r = vec![
        vec![rational(3, 5), rational(-4, 5)],
        vec![rational(4, 5), rational(3, 5)],
    ];
    let rotated = top.frame_rotate(&r)?;
    println!("Berezin after a 3-4-5 rotation = {}", rotated.berezin());
    let reflection = vec![
        vec![Rational::one(), Rational::zero()],
        vec![Rational::zero(), -Rational::one()],
    ];
    println!(
        "reflection rejected: {}",
        top.frame_rotate(&reflection).unwrap_err()
    );
    Ok(())
}

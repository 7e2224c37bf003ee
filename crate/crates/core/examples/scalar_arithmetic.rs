//! Exact polynomial coefficients: arithmetic, derivatives, numeric evaluation.

use std::collections::HashMap;

use cone_thom::scalar::{rational, Scalar, Variable};

fn main() -> cone_thom::Result<()> {
    let x1 = Scalar::var(Variable::X(1));
    let y1 = Scalar::var(Variable::Y(1));
    let t = Scalar::var(Variable::T);
    let s_inv = Scalar::s_power(-1);

    let a = &x1 + &s_inv;
    println!("(x1 + s^-1) + (-x1) = {}", &a + &(-&x1));
    println!("y1 * y1 = {}", &y1 * &y1);
    println!(
        "(1/2)(2/3) = {}",
        Scalar::constant(rational(1, 2)) * Scalar::constant(rational(2, 3))
    );

    let f = &(&t * &x1) + &(&t * &t);
    println!("d/dt (t x1 + t^2) = {}", f.partial_derivative(Variable::T)?);
    println!(
        "d/dy1 (y1^2) = {}",
        (&y1 * &y1).partial_derivative(Variable::Y(1))?
    );
    println!(
        "d/ds is rejected: {}",
        f.partial_derivative(Variable::S).unwrap_err()
    );

    let point = HashMap::from([(Variable::X(1), 3.0)]);
    let s = (2.0 * std::f64::consts::PI).sqrt();
    println!(
        "x1^2 at x1 = 3: {}",
        (&x1 * &x1).evaluate_numeric(&point, s)?
    );
    println!("s = {}", Scalar::s_power(1).evaluate_numeric(&point, s)?);
    Ok(())
}

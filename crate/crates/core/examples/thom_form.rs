//! The Thom form U: construction, closedness and the fiber integral (1, 0).

use cone_thom::cone::{cone_d, ConnectionMatrix, EndomorphismField};
use cone_thom::form::{ChartSpec, Form};
use cone_thom::instance::{generate, GenConfig};
use cone_thom::scalar::{Scalar, Variable};
use cone_thom::thom::{
    build_a, build_u, check_closed, check_fiber, fiber_integrate, ConnectionData,
};

fn main() -> cone_thom::Result<()> {
    let point = ChartSpec::new(0, 1)?;
    let flat = ConnectionData::new(
        point,
        ConnectionMatrix::zero(point),
        EndomorphismField::zero(point),
        Form::zero(point),
    )?;
    println!("rank 1 over a point: A = {}", build_a(&flat));
    println!("U = {}", build_u(&flat)?.u);

    let c = ChartSpec::new(2, 2)?;
    let g = &Scalar::var(Variable::X(1)) + &Scalar::integer(2);
    let phi = EndomorphismField::new(
        c,
        vec![vec![Scalar::zero(), -g.clone()], vec![g, Scalar::zero()]],
    )?;
    let omega = Form::dx(c, 1).wedge(&Form::dx(c, 2));
    let twisted = ConnectionData::new(c, ConnectionMatrix::zero(c), phi, omega)?;
    let u = build_u(&twisted)?.u;
    println!("twisted rank 2: U = {u}");
    println!("d^omega U = {}", cone_d(&u, &twisted.omega)?);
    println!("fiber integral = {}", fiber_integrate(&u)?);

    let data = generate(&GenConfig::new(3, 3, 5))?;
    println!("{}", check_closed(&data));
    println!("{}", check_fiber(&data));
    Ok(())
}

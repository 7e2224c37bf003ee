//! Mapping cone pairs: product, differential, the derivation Φ^Λ, the
//! covariant derivative on Λ*E-valued forms and the pair operator 𝔸.

use cone_thom::cone::{
    cone_covariant, cone_d, nabla_tilde, pair_berezin, pair_contract_v, pair_wedge, phi_lambda,
    ConePair, ConnectionMatrix, EndomorphismField,
};
use cone_thom::form::{ChartSpec, Form};
use cone_thom::scalar::{Scalar, Variable};

fn main() -> cone_thom::Result<()> {
    let c = ChartSpec::new(2, 2)?;
    let x = |i| Scalar::var(Variable::X(i));
    let z = Form::zero(c);

    let f = Form::dx(c, 1).mul_scalar(&x(2));
    let eta = ConnectionMatrix::new(c, vec![vec![z.clone(), -&f], vec![f, z.clone()]])?;
    let g = &x(1) + &Scalar::integer(2);
    let phi = EndomorphismField::new(
        c,
        vec![vec![Scalar::zero(), -g.clone()], vec![g, Scalar::zero()]],
    )?;
    let omega = Form::dx(c, 1).wedge(&Form::dx(c, 2)).mul_scalar(&x(1));

    let e1 = Form::e(c, 1);
    println!("Phi(e1) = {}", phi_lambda(&phi, &e1));
    println!(
        "Phi(e1 e2) = {}",
        phi_lambda(&phi, &e1.wedge(&Form::e(c, 2)))
    );
    println!("nabla e1 = {}", nabla_tilde(&eta, &e1));
    println!(
        "nabla nabla e1 = {}",
        nabla_tilde(&eta, &nabla_tilde(&eta, &e1))
    );

    let unit_second = ConePair::from_second(Form::one(c));
    println!("d^omega (0, 1) = {}", cone_d(&unit_second, &omega)?);
    println!(
        "A(e1, 0) = {}",
        cone_covariant(&eta, &phi, &omega, &ConePair::from_first(e1.clone()))?
    );
    println!(
        "A(0, e1) = {}",
        cone_covariant(&eta, &phi, &omega, &ConePair::from_second(e1.clone()))?
    );

    let p = ConePair::new(Form::dx(c, 1).mul_scalar(&x(2)), Form::e(c, 2))?;
    let q = ConePair::new(e1.clone(), Form::one(c))?;
    println!("p ^ q = {}", pair_wedge(&p, &q)?);
    println!(
        "v-contract (0, e1) = {}",
        pair_contract_v(&ConePair::from_second(e1))
    );
    println!("Berezin (p ^ q) = {}", pair_berezin(&pair_wedge(&p, &q)?));
    Ok(())
}

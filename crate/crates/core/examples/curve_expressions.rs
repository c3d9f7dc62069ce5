// Parse curve components, differentiate them symbolically and lift a curve
// to a jet along one parameter axis.

use jtangent::curve::{lift_curve, CurveSpec};
use jtangent::Expr;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let e = Expr::parse("t^3 - 2*sin(t)*cosh(t/2)")?;
    for k in 0..4 {
        let d = e.nth_derivative(k);
        println!("d^{k}/dt^{k}: {d}    at t = 0.5: {:.6}", d.eval(0.5)?);
    }

    match Expr::parse("xy + 1") {
        Ok(_) => return Err("curve sources only know the variable t".into()),
        Err(err) => println!("rejected: {err}"),
    }
    if let Err(err) = Expr::parse("1/t")?.eval(0.0) {
        println!("evaluation error: {err}");
    }

    // The circle (cos t, sin t) lifted along y at t = 0.
    let circle = CurveSpec::parse(&["cos(t)", "sin(t)"])
        .map_err(|(i, err)| format!("component {i}: {err}"))?;
    let jet = lift_curve(&circle, 1, 0.0)?;
    println!("value     {:?}", jet.value().as_slice());
    println!("d/dy      {:?}", jet.d(&[1]).as_slice());
    println!("d2/dy2    {:?}", jet.d(&[1, 1]).as_slice());
    println!("d3/dy3    {:?}", jet.d(&[1, 1, 1]).as_slice());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

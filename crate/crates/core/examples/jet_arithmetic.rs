// Third-order jets in (x, y, z): products, hyperbolic functions and the
// immersion `f = J g cosh z − g sinh z`.

use jtangent::constructors::immersion_from_g;
use jtangent::paracomplex::{apply_j, det4};
use jtangent::{Jet3, Jet3Vec4};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let [x, y, z] = [
        Jet3::variable(0, 1.0),
        Jet3::variable(1, 2.0),
        Jet3::variable(2, 0.3),
    ];

    let xy = x * y;
    println!(
        "xy at (1,2):  value {} d/dx {} d/dy {} d2/dxdy {}",
        xy.value(),
        xy.d(&[0]),
        xy.d(&[1]),
        xy.d(&[0, 1])
    );

    let unit = z.cosh() * z.cosh() - z.sinh() * z.sinh();
    let max_dev = unit.max_abs_diff(&Jet3::one());
    println!("cosh^2 - sinh^2 differs from the unit jet by {max_dev:.1e}");

    // g(x, y) = (x + cos y, sin y, x y, 1 + x) and the induced f.
    let (c, s) = (y.value().cos(), y.value().sin());
    let cos_y = y.compose([c, -s, -c, s]);
    let sin_y = y.compose([s, c, -s, -c]);
    let g = Jet3Vec4([x + cos_y, sin_y, x * y, Jet3::one() + x]);
    let f = immersion_from_g(&g, z.value());
    let gv = g.value();
    let lhs = det4(&f.d(&[0]), &f.d(&[1]), &f.d(&[2]), &f.value());
    let rhs = det4(&g.d(&[0]), &g.d(&[1]), &gv, &apply_j(&gv));
    println!("det[f_x, f_y, f_z, f] = {lhs:.12}");
    println!("det[g_x, g_y, g, Jg]  = {rhs:.12}");
    if (lhs - rhs).abs() > 1e-9 * rhs.abs().max(1.0) {
        return Err("determinant identity violated".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

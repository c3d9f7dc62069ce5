// Induce the almost paracontact structure `(φ, ξ, η)` at a point, read off
// the eigendirections `D±`, and move to another J-tangent transversal field.

use jtangent::constructors::{gallery, GalleryName};
use jtangent::paracontact::{axiom_residuals, induce, null_verdict, transform_structure};
use nalgebra::Vector3;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let oracle = gallery(GalleryName::Ex53F2);
    let p = [0.3, -0.7, 0.2];
    let (f, c) = oracle.jets(p)?;
    let frame = [f.d(&[0]), f.d(&[1]), f.d(&[2]), c.value()];
    let s = induce(&frame, 1e12, 1e-8)?;
    println!("at {p:?}");
    println!("  xi  = {:?}", s.xi.as_slice());
    println!("  eta = {:?}", s.eta.as_slice());
    println!("  phi = {:.4}", s.phi);
    println!("  D+  = {:?}", s.dplus.as_slice());
    println!("  D-  = {:?}", s.dminus.as_slice());

    // D+ should be spanned by X = 1/4 d/dx + y^2 d/dy - y d/dz.
    let y = p[1];
    let x_field = Vector3::new(0.25, y * y, -y);
    let expected = x_field / x_field.amax();
    println!("  |D+ - X/max|X|| = {:.1e}", (s.dplus - expected).amax());

    let d = jtangent::affine::decompose(&f, &c, 1e12)?;
    let nv = null_verdict(&s, &d.h, 1e-8);
    println!(
        "  h(D+, D+) = {:.2e}, h(D-, D-) = {:.6}",
        nv.h_dplus, nv.h_dminus
    );

    // C' = 2C + f_*(Z) with Z in D.
    let z = s.dplus * 0.5 - s.dminus;
    let moved = transform_structure(&s, 2.0, &z)?;
    let new_c = frame[3] * 2.0 + frame[0] * z[0] + frame[1] * z[1] + frame[2] * z[2];
    let direct = induce(&[frame[0], frame[1], frame[2], new_c], 1e12, 1e-8)?;
    println!(
        "  transformed vs recomputed: xi {:.1e}, eta {:.1e}, phi {:.1e}",
        (moved.xi - direct.xi).amax(),
        (moved.eta - direct.eta).amax(),
        (moved.phi - direct.phi).amax()
    );
    let [square, normalization, eigen] = axiom_residuals(&moved);
    println!("  axioms after the change: {square:.1e} {normalization:.1e} {eigen:.1e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

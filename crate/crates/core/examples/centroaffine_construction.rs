// Build a centro-affine hypersurface with a null direction from two curves
// and classify it on a grid.

use jtangent::classify::{classify, Grid, Tolerances};
use jtangent::constructors::{build_centroaffine, CentroAffineSpec, Variant};
use jtangent::CurveSpec;

fn curve(sources: &[&str]) -> Result<CurveSpec, Box<dyn std::error::Error>> {
    CurveSpec::parse(sources).map_err(|(i, e)| format!("component {i}: {e}").into())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for variant in [Variant::Dplus, Variant::Dminus] {
        let spec = CentroAffineSpec {
            variant,
            alpha: curve(&["cos(t)", "sin(t)"])?,
            gamma2: curve(&["1 + t^2", "0", "t", "exp(t/3)"])?,
            domain: (-1.0, 1.0),
        };
        println!(
            "{variant}: min |det[g1, g2', g2, J g2]| = {:.4}",
            spec.min_determinant(64)?
        );
        let oracle = build_centroaffine(spec)?;
        let points = Grid::default()
            .restricted_to(&oracle)
            .ok_or("empty grid")?
            .points();
        let report = classify(&oracle, &points, &Tolerances::default())?;
        let v = &report.verdicts;
        let res = &report.residuals;
        println!(
            "  centroaffine={} J-tangent={} nondegenerate={} null+={} null-={}",
            v.is_centroaffine, v.is_J_tangent, v.is_nondegenerate, v.null_Dplus, v.null_Dminus
        );
        println!(
            "  Gauss {:.1e}, Codazzi(h) {:.1e}, Codazzi(S) {:.1e}, Ricci {:.1e}",
            res.gauss, res.codazzi_h, res.codazzi_s, res.ricci
        );
    }

    // Dependent curve data is refused with the offending parameter.
    let degenerate = CentroAffineSpec {
        variant: Variant::Dplus,
        alpha: curve(&["t", "-1"])?,
        gamma2: curve(&["t", "-1", "t", "-1"])?,
        domain: (-1.0, 1.0),
    };
    match build_centroaffine(degenerate) {
        Ok(_) => return Err("degenerate data accepted".into()),
        Err(e) => println!("refused: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

// Build proper affine hyperspheres from planar curves and check that the
// shape operator is `λ Id` with `|λ|` fixed by `E`.

use jtangent::classify::{classify, Grid, Tolerances};
use jtangent::constructors::{build_sphere, lambda_magnitude, SphereSpec, Variant};
use jtangent::CurveSpec;

fn curve(sources: &[&str]) -> Result<CurveSpec, Box<dyn std::error::Error>> {
    CurveSpec::parse(sources).map_err(|(i, e)| format!("component {i}: {e}").into())
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (variant, e, sign) in [(Variant::Dminus, 0.25, 1.0), (Variant::Dplus, -0.8, -1.0)] {
        let spec = SphereSpec {
            variant,
            alpha: curve(&["cosh(t)", "sinh(t)"])?,
            beta: curve(&["2 + t^2", "t"])?,
            a: curve(&["t/2"])?,
            e,
            lambda_sign: sign,
            domain: (-1.0, 1.0),
        };
        let (b_min, b_max, det_min) = spec.summary(64)?;
        let oracle = build_sphere(spec)?;
        let points = Grid::default()
            .restricted_to(&oracle)
            .ok_or("empty grid")?
            .points();
        let report = classify(&oracle, &points, &Tolerances::default())?;
        println!("{variant} E = {e}: B in [{b_min:.4}, {b_max:.4}], min |det| {det_min:.4}");
        println!(
            "  lambda declared {:.6}, fitted {:.6} (spread {:.1e}), |lambda(E)| = {:.6}",
            report.lambda.declared,
            report.lambda.mean,
            report.lambda.spread,
            lambda_magnitude(e)
        );
        println!(
            "  blaschke={} hypersphere={} null+={} null-={} tau {:.1e} volume {:.1e}",
            report.verdicts.is_blaschke,
            report.verdicts.is_hypersphere,
            report.verdicts.null_Dplus,
            report.verdicts.null_Dminus,
            report.residuals.tau,
            report.residuals.blaschke_volume
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

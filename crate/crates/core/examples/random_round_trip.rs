// Sample random valid specs of both families, construct and classify them.

use jtangent::classify::{classify, Grid, Tolerances};
use jtangent::constructors::random::{random_centroaffine_specs, random_sphere_specs};
use jtangent::constructors::ImmersionOracle;

fn worst(oracles: &[ImmersionOracle]) -> Result<(usize, f64, f64), Box<dyn std::error::Error>> {
    let (mut agree, mut fundamental, mut tau) = (0, 0.0f64, 0.0f64);
    for o in oracles {
        let points = Grid::default()
            .restricted_to(o)
            .ok_or("empty grid")?
            .points();
        let r = classify(o, &points, &Tolerances::default())?;
        let declared = match o.variant() {
            jtangent::Variant::Dplus => r.verdicts.null_Dplus,
            jtangent::Variant::Dminus => r.verdicts.null_Dminus,
        };
        agree += usize::from(declared);
        let res = &r.residuals;
        fundamental = fundamental.max(
            res.gauss
                .max(res.codazzi_h)
                .max(res.codazzi_s)
                .max(res.ricci),
        );
        tau = tau.max(res.tau);
    }
    Ok((agree, fundamental, tau))
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let centro = random_centroaffine_specs(1, 5);
    let spheres = random_sphere_specs(1, 5);
    for (label, oracles, rejected) in [
        (
            "centro-affine",
            centro
                .accepted
                .into_iter()
                .map(|(_, o)| o)
                .collect::<Vec<_>>(),
            centro.rejected,
        ),
        (
            "hypersphere",
            spheres.accepted.into_iter().map(|(_, o)| o).collect(),
            spheres.rejected,
        ),
    ] {
        let (agree, fundamental, tau) = worst(&oracles)?;
        println!(
            "{label:14} {} built ({rejected} rejected), declared null direction confirmed {agree}/{}, max fundamental residual {fundamental:.1e}, max tau {tau:.1e}",
            oracles.len(),
            oracles.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

// Verify the five worked examples against their closed-form data.
//
// ```text
// cargo run --example golden_gallery
// ```

use jtangent::classify::{Grid, Tolerances};
use jtangent::constructors::GalleryName;
use jtangent::verify::verify_example;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let points = Grid::default().points();
    for name in GalleryName::ALL {
        let v = verify_example(name, &points, &Tolerances::default())?;
        let worst = v.checks.iter().map(|c| c.error).fold(0.0, f64::max);
        let r = &v.report;
        println!(
            "{name:8} {} null+={:5} null-={:5} hypersphere={:5} hyperquadric={:5} theta in [{:.4}, {:.4}] worst error {worst:.1e}",
            if v.passed { "ok  " } else { "FAIL" },
            r.verdicts.null_Dplus,
            r.verdicts.null_Dminus,
            r.verdicts.is_hypersphere,
            r.verdicts.is_hyperquadric,
            r.residuals.theta_range.0,
            r.residuals.theta_range.1,
        );
        if !v.passed {
            return Err(format!("{name} does not match its reference data").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

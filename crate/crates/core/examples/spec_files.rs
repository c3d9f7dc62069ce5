// Load the JSON specs in `examples/specs`, build each immersion and report
// its verdicts.

use std::fs;
use std::path::Path;

use jtangent::classify::{classify, Grid, Tolerances};
use jtangent::specfile::SpecFile;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/specs");
    let mut paths: Vec<_> = fs::read_dir(&dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.sort();
    for path in paths {
        let name = path.file_name().unwrap_or_default().to_string_lossy();
        let spec = SpecFile::from_json(&fs::read_to_string(&path)?)?.to_spec()?;
        let oracle = match spec.build() {
            Ok(o) => o,
            Err(e) => {
                println!("{name:26} rejected: {e}");
                continue;
            }
        };
        let points = Grid::default()
            .restricted_to(&oracle)
            .ok_or("empty grid")?
            .points();
        let r = classify(&oracle, &points, &Tolerances::default())?;
        let v = &r.verdicts;
        println!(
            "{name:26} {} lambda={:+.4} centroaffine={} hypersphere={} null+={} null-={}",
            r.variant,
            r.lambda.mean,
            v.is_centroaffine,
            v.is_hypersphere,
            v.null_Dplus,
            v.null_Dminus
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

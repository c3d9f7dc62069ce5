// Change the transversal field to `Φ C + f_* Z` and compare the transformed
// structure with a direct recomputation.

use jtangent::affine::{analyze, change_transversal, decompose, transversal_combination};
use jtangent::constructors::{gallery, GalleryName};
use jtangent::Jet3;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let oracle = gallery(GalleryName::Ex41);
    let p = [0.4, 0.1, -0.3];
    let (f, c) = oracle.jets(p)?;
    let [x, y, z] = [0, 1, 2].map(|k| Jet3::variable(k, p[k]));

    let phi = Jet3::constant(2.0) + x * y * 0.5 + z.sinh();
    let zf = [y * 0.3, Jet3::constant(-0.2) + x * z, x * x * 0.1];

    let base = analyze(&f, &c, 1e12)?;
    let moved = change_transversal(&base, phi.dual_of(&[]), zf.map(|c| c.dual_of(&[])))?;
    let direct = decompose(&f, &transversal_combination(&f, &c, &phi, &zf), 1e12)?;

    println!("h before  {:.4}", base.data.h);
    println!("h after   {:.4}", moved.h);
    println!("tau after {:?}", moved.tau.as_slice());
    println!("|h  - h'|   {:.1e}", (moved.h - direct.h).amax());
    println!("|S  - S'|   {:.1e}", (moved.s - direct.s).amax());
    println!("|tau - tau'| {:.1e}", (moved.tau - direct.tau).amax());
    let gamma_diff = (0..27)
        .map(|k| {
            (moved.gamma[k / 9][(k / 3) % 3][k % 3] - direct.gamma[k / 9][(k / 3) % 3][k % 3]).abs()
        })
        .fold(0.0, f64::max);
    println!("|Gamma - Gamma'| {gamma_diff:.1e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

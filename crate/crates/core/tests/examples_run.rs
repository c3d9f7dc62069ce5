//! Every runnable example completes without error.

mod golden_gallery {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/golden_gallery.rs"
    ));
}

mod curve_expressions {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/curve_expressions.rs"
    ));
}

mod jet_arithmetic {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/jet_arithmetic.rs"
    ));
}

mod centroaffine_construction {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/centroaffine_construction.rs"
    ));
}

mod sphere_construction {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/sphere_construction.rs"
    ));
}

mod paracontact_structure {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/paracontact_structure.rs"
    ));
}

mod transversal_change {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/transversal_change.rs"
    ));
}

mod spec_files {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/spec_files.rs"
    ));
}

mod random_round_trip {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/random_round_trip.rs"
    ));
}

#[test]
fn golden_gallery_runs() {
    golden_gallery::run().expect("golden_gallery example");
}

#[test]
fn curve_expressions_runs() {
    curve_expressions::run().expect("curve_expressions example");
}

#[test]
fn jet_arithmetic_runs() {
    jet_arithmetic::run().expect("jet_arithmetic example");
}

#[test]
fn centroaffine_construction_runs() {
    centroaffine_construction::run().expect("centroaffine_construction example");
}

#[test]
fn sphere_construction_runs() {
    sphere_construction::run().expect("sphere_construction example");
}

#[test]
fn paracontact_structure_runs() {
    paracontact_structure::run().expect("paracontact_structure example");
}

#[test]
fn transversal_change_runs() {
    transversal_change::run().expect("transversal_change example");
}

#[test]
fn spec_files_runs() {
    spec_files::run().expect("spec_files example");
}

#[test]
fn random_round_trip_runs() {
    random_round_trip::run().expect("random_round_trip example");
}

use mlmath_core::geometry::gen_quadratic_multiplicity;
use mlmath_core::rng::RngSeed;
use std::io::Write;

fn main() {
    let quad = gen_quadratic_multiplicity(1_000_000, 10, RngSeed(42)).unwrap();
    let mut f = std::io::BufWriter::new(std::fs::File::create("/tmp/quad.csv").unwrap());
    writeln!(f, "f0,f1,f2,f3,f4,f5,label").unwrap();
    for ex in quad.examples() {
        let cols: Vec<String> = ex.features.iter().map(|v| format!("{v}")).collect();
        writeln!(f, "{},{}", cols.join(","), ex.label).unwrap();
    }
}

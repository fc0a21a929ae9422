use std::time::Instant;
use mlmath_core::dataset::split_train_val;
use mlmath_core::geometry::{gen_parity_functions, gen_quadratic_multiplicity};
use mlmath_core::learners::{fit, Gamma, LearnerKind, LearnerSpec, SvmConfig, TreeConfig};
use mlmath_core::metrics::accuracy_pair;
use mlmath_core::rng::RngSeed;

fn main() {
    let t0 = Instant::now();
    let quad = gen_quadratic_multiplicity(1_000_000, 10, RngSeed(42)).unwrap();
    println!("quadratic: {} examples, counts {:?}, {:.1?}", quad.len(), quad.class_counts(), t0.elapsed());

    let t0 = Instant::now();
    let split = split_train_val(&quad, 0.8, RngSeed(1)).unwrap();
    let spec = LearnerSpec::new(LearnerKind::DecisionTree(TreeConfig::default()), RngSeed(2));
    let model = fit(&spec, &split.train).unwrap();
    let preds = model.predict_batch(&split.validation).unwrap();
    let pair = accuracy_pair(&split.validation.labels(), &preds, 2).unwrap();
    println!("quadratic tree: ({:.3}, {:.3}) in {:.1?}", pair.precision, pair.phi, t0.elapsed());

    let t0 = Instant::now();
    let parity = gen_parity_functions(100_000, RngSeed(7)).unwrap();
    println!("parity: {} examples in {:.1?}", parity.len(), t0.elapsed());
    let split = split_train_val(&parity, 0.8, RngSeed(1)).unwrap();
    let t0 = Instant::now();
    let spec = LearnerSpec::new(LearnerKind::Svm(SvmConfig::gaussian(Gamma::Dim)), RngSeed(3));
    let model = fit(&spec, &split.train).unwrap();
    println!("parity svm fit in {:.1?}", t0.elapsed());
    let t0 = Instant::now();
    let preds = model.predict_batch(&split.validation).unwrap();
    let pair = accuracy_pair(&split.validation.labels(), &preds, 2).unwrap();
    println!("parity svm: ({:.4}, {:.4}), predict {:.1?}", pair.precision, pair.phi, t0.elapsed());
}

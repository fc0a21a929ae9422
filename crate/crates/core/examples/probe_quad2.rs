use mlmath_core::dataset::split_train_val;
use mlmath_core::geometry::gen_quadratic_multiplicity;
use mlmath_core::learners::*;
use mlmath_core::metrics::accuracy_pair;
use mlmath_core::rng::RngSeed;

fn main() {
    for bound in [6, 8, 10, 12, 14] {
        let quad = gen_quadratic_multiplicity(1_000_000, bound, RngSeed(42)).unwrap();
        let split = split_train_val(&quad, 0.8, RngSeed(1)).unwrap();
        let spec = LearnerSpec::new(LearnerKind::DecisionTree(TreeConfig::default()), RngSeed(2));
        let model = fit(&spec, &split.train).unwrap();
        let tr = model.predict_batch(&split.train).unwrap();
        let tr_pair = accuracy_pair(&split.train.labels(), &tr, 2).unwrap();
        let preds = model.predict_batch(&split.validation).unwrap();
        let pair = accuracy_pair(&split.validation.labels(), &preds, 2).unwrap();
        println!("bound {bound:2} pop/class {:5}: tree val ({:.3}, {:.3}) train {:.3}", quad.class_counts()[0], pair.precision, pair.phi, tr_pair.precision);
    }
}

use std::time::Instant;
use mlmath_core::dataset::split_train_val;
use mlmath_core::geometry::gen_quadratic_multiplicity;
use mlmath_core::learners::*;
use mlmath_core::metrics::accuracy_pair;
use mlmath_core::rng::RngSeed;

fn main() {
    let quad = gen_quadratic_multiplicity(1_000_000, 10, RngSeed(42)).unwrap();
    let split = split_train_val(&quad, 0.8, RngSeed(1)).unwrap();
    let kinds: Vec<(&str, LearnerKind)> = vec![
        ("tree d20", LearnerKind::DecisionTree(TreeConfig { max_depth: 20, min_leaf: 1 })),
        ("tree d30 l2", LearnerKind::DecisionTree(TreeConfig { max_depth: 30, min_leaf: 2 })),
        ("tree d12 l5", LearnerKind::DecisionTree(TreeConfig { max_depth: 12, min_leaf: 5 })),
        ("forest", LearnerKind::RandomForest(ForestConfig::default())),
        ("knn1", LearnerKind::Knn(KnnConfig::euclidean(1))),
        ("knn5", LearnerKind::Knn(KnnConfig::euclidean(5))),
        ("svm scale", LearnerKind::Svm(SvmConfig::gaussian(Gamma::Scale))),
        ("svm g0.5", LearnerKind::Svm(SvmConfig::gaussian(Gamma::Fixed(0.5)))),
        ("mlp", LearnerKind::Mlp(MlpConfig { hidden: vec![64, 32], epochs: 100, ..MlpConfig::default() })),
        ("bayes", LearnerKind::NaiveBayes(NaiveBayesConfig::default())),
    ];
    for (name, kind) in kinds {
        let t0 = Instant::now();
        let model = fit(&LearnerSpec::new(kind, RngSeed(2)), &split.train).unwrap();
        let preds = model.predict_batch(&split.validation).unwrap();
        let pair = accuracy_pair(&split.validation.labels(), &preds, 2).unwrap();
        println!("{name:12} ({:.3}, {:.3}) {:.1?}", pair.precision, pair.phi, t0.elapsed());
    }
}

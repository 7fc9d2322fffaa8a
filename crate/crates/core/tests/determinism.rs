use modlie::corpus;
use modlie::pipeline::{faithful_cr, run_corpus, PipelineConfig};
use modlie::{EnvelopeMode, Parallelism};

fn certificate_texts(cfg: &PipelineConfig) -> Vec<String> {
    run_corpus(&corpus::corpus(), cfg)
        .into_iter()
        .map(|r| r.general.map(|(_, c)| c.to_text()).unwrap_or_else(|e| e.to_string()))
        .collect()
}

#[test]
fn same_seed_same_bytes() {
    for mode in [EnvelopeMode::Paper, EnvelopeMode::Compact] {
        let cfg = PipelineConfig { envelope_mode: mode, ..PipelineConfig::with_seed(1) };
        assert_eq!(certificate_texts(&cfg), certificate_texts(&cfg));
        let seq = PipelineConfig { parallelism: Parallelism::Sequential, ..cfg };
        assert_eq!(certificate_texts(&cfg), certificate_texts(&seq));
    }
}

#[test]
fn every_seed_certifies() {
    for seed in [0, 2, 17, u64::MAX] {
        for e in corpus::corpus() {
            let (m, cert) = faithful_cr(&e.algebra, &PipelineConfig::with_seed(seed)).unwrap();
            assert!(cert.passed(), "{} seed {seed}: {:?}", e.name, cert.failures());
            assert!(m.module().is_faithful());
            assert!(cert.to_text().contains(&format!("seed: {seed}")));
        }
    }
}

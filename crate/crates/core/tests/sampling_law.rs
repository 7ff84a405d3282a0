//! The depth law of excursions should not depend on how the starting
//! geodesic is drawn.

use cone_excursions::closed_forms::dist;
use cone_excursions::excursion::{simulate, EmpiricalDistribution, SamplingLaw, SimConfig};
use cone_excursions::fuchsian::modular_group;
use cone_excursions::regions::ConeConstants;

const KS_TOL: f64 = 0.03;

#[test]
fn depth_law_is_independent_of_the_starting_measure() {
    let model = modular_group();
    let cc = ConeConstants::new(3).unwrap();
    let r = 0.3;
    for (law, seed) in [(SamplingLaw::Uniform, 91), (SamplingLaw::CrossSection, 92)] {
        let mut cfg = SimConfig::new(r, 400.0);
        cfg.law = law;
        let sim = simulate(&model, &cfg, 100, seed).unwrap();
        let depths = sim.depths(false);
        assert!(depths.len() > 5000, "{law:?}: {}", depths.len());
        let ks = EmpiricalDistribution::new(&depths, &[r]).unwrap().ks_distance(|z| dist(&cc, r, z.min(r)).unwrap());
        assert!(ks <= KS_TOL, "{law:?}: ks {ks}");
    }
}

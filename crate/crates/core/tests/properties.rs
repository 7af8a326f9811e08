use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use sforms::characters::{character_table, integer_inner_product, restrict, CharacterTable};
use sforms::groups::{group_from_selector, FiniteGroup, SubgroupHandle};
use sforms::induction::{cyclic_character, induce_character, induce_cyclic};
use sforms::spectra::{degeneracy, degeneracy_series, TwistSpec};

struct Fixture {
    group: Arc<FiniteGroup>,
    table: CharacterTable,
}

fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        ["2T", "2O", "2I"]
            .iter()
            .map(|s| {
                let group = group_from_selector(s).unwrap();
                let table = character_table(&group).unwrap();
                Fixture { group, table }
            })
            .collect()
    })
}

fn generator() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("R"), Just("S"), Just("T"), Just("RST")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn degeneracy_is_additive(gi in 0usize..3, a in 0usize..9, b in 0usize..9, n in 0usize..40) {
        let f = &fixtures()[gi];
        let (a, b) = (a % f.table.len(), b % f.table.len());
        let mut coeffs = vec![0i64; f.table.len()];
        coeffs[a] += 1;
        coeffs[b] += 2;
        let sum = TwistSpec::combination(&f.group, &coeffs).unwrap();
        let da = degeneracy(&TwistSpec::irrep(&f.group, &f.table.label(a).name).unwrap(), n).unwrap();
        let db = degeneracy(&TwistSpec::irrep(&f.group, &f.table.label(b).name).unwrap(), n).unwrap();
        prop_assert_eq!(degeneracy(&sum, n).unwrap(), da + 2 * db);
    }

    #[test]
    fn spinor_twists_live_on_odd_levels(gi in 0usize..3, a in 0usize..9, n in 0usize..40) {
        let f = &fixtures()[gi];
        let label = f.table.label(a % f.table.len());
        let d = degeneracy(&TwistSpec::irrep(&f.group, &label.name).unwrap(), n).unwrap();
        if label.spinor == (n % 2 == 0) {
            prop_assert_eq!(d, 0);
        }
        // at most dim(rho) copies of each of the (n+1)-dimensional spin-n/2 pieces
        prop_assert!(d <= (label.dimension * (n + 1) * (n + 1)) as u64);
    }

    #[test]
    fn lens_spectrum_is_reflection_symmetric(gi in 0usize..3, gen in generator(), r in 0i64..10) {
        let f = &fixtures()[gi];
        let h = SubgroupHandle::cyclic(&f.group, gen).unwrap();
        let q = h.order() as i64;
        let r = r % q;
        let a = degeneracy_series(&TwistSpec::cyclic(&h, r).unwrap(), 30).unwrap();
        let b = degeneracy_series(&TwistSpec::cyclic(&h, q - r).unwrap(), 30).unwrap();
        prop_assert_eq!(a.entries, b.entries);
    }

    #[test]
    fn induced_dimension_is_the_index(gi in 0usize..3, gen in generator(), r in 0i64..10) {
        let f = &fixtures()[gi];
        let h = SubgroupHandle::cyclic(&f.group, gen).unwrap();
        let r = r % h.order() as i64;
        let d = induce_cyclic(&f.group, gen, r).unwrap();
        prop_assert_eq!(d.constituents.dimension() as usize, h.index());
    }

    #[test]
    fn reciprocity(gi in 0usize..3, gen in generator(), r in 0i64..10, a in 0usize..9) {
        let f = &fixtures()[gi];
        let h = SubgroupHandle::cyclic(&f.group, gen).unwrap();
        let b = cyclic_character(&h, r % h.order() as i64).unwrap();
        let chi = f.table.irrep(a % f.table.len());
        let lhs = integer_inner_product(&chi, &induce_character(&h, &b).unwrap()).unwrap();
        let rhs = integer_inner_product(&restrict(&chi, &h).unwrap(), &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_a_group_law(gi in 0usize..3, x in 0usize..120, y in 0usize..120, z in 0usize..120) {
        let g = &fixtures()[gi].group;
        let (x, y, z) = (x % g.order(), y % g.order(), z % g.order());
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inverse(x)), g.identity());
        prop_assert_eq!(g.power(x, g.element_order(x)), g.identity());
        prop_assert_eq!(g.class_of(g.conjugate(x, y)), g.class_of(x));
    }

    #[test]
    fn series_output_is_deterministic(gi in 0usize..3, a in 0usize..9, n_max in 0usize..25) {
        let f = &fixtures()[gi];
        let tw = TwistSpec::irrep(&f.group, &f.table.label(a % f.table.len()).name).unwrap();
        let s = degeneracy_series(&tw, n_max).unwrap();
        prop_assert_eq!(s.to_json(), degeneracy_series(&tw, n_max).unwrap().to_json());
        prop_assert_eq!(s.to_csv().lines().count(), n_max + 2);
        prop_assert_eq!(&s.to_json()["schema_version"], 1);
    }
}

#[test]
fn unknown_irrep_lists_valid_names() {
    let g = &fixtures()[0].group;
    let err = TwistSpec::irrep(g, "4s").unwrap_err().to_string();
    assert!(err.contains("2s''") && err.contains('3'), "{err}");
}

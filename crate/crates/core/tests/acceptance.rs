//! Acceptance criteria. Runs without the libtest harness so every criterion prints a line,
//! then exits nonzero if any failed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use sforms::characters::{character_table, CharacterTable};
use sforms::exactnum::CycloNum;
use sforms::groups::{group_from_selector, verify_conjugation_identities, FiniteGroup, GroupKind, SubgroupHandle};
use sforms::induction::{cyclic_character, frobenius_multiplicity, induce_character, induced_matrices, induction_table, ExplicitRep};
use sforms::mckay::{compactified_diagram, mckay_graph};
use sforms::reference::{induction_rows, PUBLISHED_MATRICES};
use sforms::spectra::{degeneracy, degeneracy_series, lens_torsion, oracle_projector_degeneracy, TwistSpec};
use sforms::theorems::{compare_with_reference, sunada_cyclic, verify_z2_relations, Discrepancy};

type Outcome = Result<(), String>;

const GENERATORS: [&str; 4] = ["R", "S", "T", "RST"];

fn polyhedral() -> Vec<Arc<FiniteGroup>> {
    ["2T", "2O", "2I"].iter().map(|s| group_from_selector(s).unwrap()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Class count by brute-force orbit enumeration on the multiplication table.
fn orbit_count(g: &FiniteGroup) -> usize {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for a in 0..g.order() {
        if seen[a] {
            continue;
        }
        count += 1;
        for u in 0..g.order() {
            seen[g.mul(g.mul(g.inverse(u), a), u)] = true;
        }
    }
    count
}

fn c1_groups() -> Outcome {
    for (g, order, classes) in polyhedral().iter().zip([(24, 7), (48, 8), (120, 9)]).map(|(g, (o, c))| (g, o, c)) {
        ensure(g.order() == order, || format!("|{}| = {}", g.name(), g.order()))?;
        let GroupKind::BinaryPolyhedral { l, m, n } = g.kind() else {
            return Err(format!("{} is not polyhedral", g.name()));
        };
        let gen = |s: &str| g.generator(s).unwrap();
        let rst = g.mul(g.mul(gen("R"), gen("S")), gen("T"));
        ensure(rst == gen("RST"), || "RST is not R*S*T".into())?;
        for (x, k) in [("R", l), ("S", m), ("T", n)] {
            ensure(g.power(gen(x), k as usize) == rst, || format!("{x}^{k} != RST in {}", g.name()))?;
        }
        ensure(g.mul(rst, rst) == g.identity() && rst != g.identity(), || "(RST)^2 != E".into())?;
        ensure(orbit_count(g) == classes && g.num_classes() == classes, || {
            format!("{} classes: {} by orbits, {} stored", g.name(), orbit_count(g), g.num_classes())
        })?;
    }
    Ok(())
}

/// Row orthogonality summed element by element; column orthogonality against centralizer orders.
fn orthogonality(t: &CharacterTable) -> Outcome {
    let g = t.group();
    let irreps: Vec<_> = t.irreps().map(|(_, chi)| chi).collect();
    for (a, x) in irreps.iter().enumerate() {
        for (b, y) in irreps.iter().enumerate() {
            let mut s = CycloNum::zero();
            for e in 0..g.order() {
                s += &(x.at(e) * &y.at(e).conj());
            }
            let want = if a == b { g.order() as i64 } else { 0 };
            ensure(s == CycloNum::from_integer(want), || format!("{}: rows {a}, {b}", g.name()))?;
        }
    }
    for c in 0..g.num_classes() {
        for d in 0..g.num_classes() {
            let mut s = CycloNum::zero();
            for chi in &irreps {
                s += &(chi.value(c) * &chi.value(d).conj());
            }
            let rep = g.classes()[c].members[0];
            let centralizer = (0..g.order()).filter(|&u| g.mul(u, rep) == g.mul(rep, u)).count();
            let want = if c == d { centralizer as i64 } else { 0 };
            ensure(s == CycloNum::from_integer(want), || format!("{}: columns {c}, {d}", g.name()))?;
        }
    }
    let dims: usize = t.labels().iter().map(|l| l.dimension * l.dimension).sum();
    ensure(dims == g.order(), || format!("{}: sum of dim^2 = {dims}", g.name()))
}

fn c2_tables() -> Outcome {
    for g in polyhedral() {
        orthogonality(&character_table(&g).map_err(|e| e.to_string())?)?;
        for gen in GENERATORS {
            let h = SubgroupHandle::cyclic(&g, gen).unwrap();
            orthogonality(&character_table(h.group()).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(())
}

fn c3_induction() -> Outcome {
    for g in polyhedral() {
        let t = character_table(&g).unwrap();
        for gen in GENERATORS {
            let Some(rows) = induction_rows(g.name(), gen) else {
                continue;
            };
            let h = SubgroupHandle::cyclic(&g, gen).unwrap();
            let table = induction_table(&g, gen).unwrap();
            for (r, want) in rows.iter().enumerate() {
                let b = cyclic_character(&h, r as i64).unwrap();
                for (label, chi) in t.irreps() {
                    let expected = want.iter().find(|(n, _)| *n == label.name).map_or(0, |(_, k)| *k as u64);
                    // frobenius_multiplicity errors unless <A, Ind B> = <Res A, B>
                    let m = frobenius_multiplicity(&chi, &h, &b).map_err(|e| e.to_string())?;
                    ensure(m == expected, || format!("{} in {r}↑{gen} of {}: {m}, expected {expected}", label.name, g.name()))?;
                    ensure(table.rows[r].constituents.multiplicity(&label.name) == expected, || {
                        format!("table row {r}↑{gen} of {}", g.name())
                    })?;
                }
            }
            let mut sum = table.column_sum();
            sum.sort();
            let mut regular: Vec<(String, u64)> = t.labels().iter().map(|l| (l.name.clone(), l.dimension as u64)).collect();
            regular.sort();
            ensure(sum == regular, || format!("column {gen} of {} does not sum to the regular rep", g.name()))?;
        }
    }
    Ok(())
}

fn c4_matrices() -> Outcome {
    for m in &PUBLISHED_MATRICES {
        let (sol, cmp) = compare_with_reference(m.key).map_err(|e| e.to_string())?;
        ensure(sol.round_trip() && cmp.round_trip, || format!("{}: M A != I", m.key))?;
        let expected = match m.key {
            "235" => Discrepancy::RowInterchange {
                swapped: vec![("3".into(), "3'".into())],
            },
            "233s" => Discrepancy::ScaledInterchange {
                swapped: vec![("2s'".into(), "2s''".into())],
                scales: vec!["1/2".into(); 3],
            },
            _ => Discrepancy::Match,
        };
        ensure(cmp.discrepancy == expected, || format!("{}: {:?}", m.key, cmp.discrepancy))?;
    }
    ensure(PUBLISHED_MATRICES.len() == 6, || "expected six matrices".into())
}

fn c5_isospectral() -> Outcome {
    let start = Instant::now();
    for g in polyhedral() {
        for gen in GENERATORS {
            let h = SubgroupHandle::cyclic(&g, gen).unwrap();
            for r in 0..h.order() as i64 {
                let lens = degeneracy_series(&TwistSpec::cyclic(&h, r).unwrap(), 60).unwrap();
                let global = degeneracy_series(&TwistSpec::induced_cyclic(&h, r).unwrap(), 60).unwrap();
                ensure(lens.entries == global.entries, || format!("{} <{gen}> r = {r}", g.name()))?;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("sweep took {secs:.1} s"))
}

fn c6_torsion() -> Outcome {
    for (q, r, want) in [(4, 1, 2.0), (6, 1, 1.0), (6, 3, 4.0)] {
        let t = lens_torsion(q, r).map_err(|e| e.to_string())?;
        ensure((t.value - want).abs() < 1e-12, || format!("T({r};{q}) = {}", t.value))?;
    }
    let lhs = lens_torsion(4, 1).unwrap().log;
    let rhs = lens_torsion(6, 1).unwrap().log + 0.5 * lens_torsion(6, 3).unwrap().log;
    ensure((lhs - rhs).abs() < 1e-12, || format!("log identity: {lhs} vs {rhs}"))
}

fn c7_relations() -> Outcome {
    let mut failures = Vec::new();
    for g in polyhedral() {
        for check in verify_z2_relations(&g, 60).map_err(|e| e.to_string())? {
            if check.as_printed && !check.holds {
                failures.push(format!("{} {} (n = {:?})", check.group, check.relation, check.witness_level.unwrap_or(0)));
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn c8_dimension() -> Outcome {
    for g in polyhedral() {
        let t = character_table(&g).unwrap();
        let twists: Vec<(u64, TwistSpec)> = t
            .irreps()
            .map(|(l, chi)| (l.dimension as u64, TwistSpec::new(chi, l.name.clone()).unwrap()))
            .collect();
        for n in 0..=60 {
            let sum: u64 = twists.iter().map(|(d, tw)| d * degeneracy(tw, n).unwrap()).sum();
            let want = (n as u64 + 1).pow(2);
            ensure(sum == want, || format!("{} n = {n}: {sum} != {want}", g.name()))?;
        }
    }
    Ok(())
}

fn c9_oracle() -> Outcome {
    let mut groups: Vec<Arc<FiniteGroup>> = [2, 4, 6].into_iter().map(|q| FiniteGroup::cyclic(q).unwrap()).collect();
    groups.extend(polyhedral());
    for g in groups {
        let t = character_table(&g).unwrap();
        for (l, chi) in t.irreps() {
            let tw = TwistSpec::new(chi, l.name.clone()).unwrap();
            for n in 0..=8 {
                let exact = degeneracy(&tw, n).map_err(|e| e.to_string())?;
                let numeric = oracle_projector_degeneracy(&tw, n).map_err(|e| e.to_string())?;
                ensure(exact == numeric, || format!("{} {} n = {n}: {exact} vs {numeric}", g.name(), l.name))?;
            }
        }
    }
    Ok(())
}

fn c10_conjugation() -> Outcome {
    let mut failures = Vec::new();
    for g in polyhedral() {
        let report = verify_conjugation_identities(&g);
        let required: &[&str] = match g.name() {
            "2T" => &["U = T^-1 R T: U^-1 T U = S^-1", "[S] = [T^-1]", "[S^2] = [T^-2]"],
            _ => &["U = S R S^-1: U^-1 T^-1 U = T", "no S/T class cross-linking"],
        };
        for id in required {
            match report.checks.iter().find(|c| c.identity == *id) {
                Some(c) if c.holds => {}
                Some(_) => failures.push(format!("{}: {id}", g.name())),
                None => failures.push(format!("{}: {id} not checked", g.name())),
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn c11_induced_matrices() -> Outcome {
    for g in polyhedral() {
        for gen in GENERATORS {
            let h = SubgroupHandle::cyclic(&g, gen).unwrap();
            for r in 0..h.order() as i64 {
                let rep = induced_matrices(&h, &ExplicitRep::cyclic(&h, r).unwrap()).map_err(|e| e.to_string())?;
                let pairs = rep.check_homomorphism(24, 1000, 7 + r as u64).map_err(|e| format!("{} <{gen}> r = {r}: {e}", g.name()))?;
                let want_pairs = if g.order() == 24 { 24 * 24 } else { 1000 };
                ensure(pairs >= want_pairs, || format!("only {pairs} products checked"))?;
                let ind = induce_character(&h, &cyclic_character(&h, r).unwrap()).unwrap();
                ensure(rep.character().unwrap() == ind, || format!("{} <{gen}> r = {r}: traces", g.name()))?;
            }
        }
    }
    Ok(())
}

fn c12_mckay() -> Outcome {
    // cyclic groups must fit in the conductor-120 field
    for q in [1u32, 2, 3, 4, 5, 6, 8, 10, 12] {
        let m = mckay_graph(&FiniteGroup::cyclic(q).unwrap()).map_err(|e| e.to_string())?;
        // a cycle: every node of weighted degree 2
        let degrees: Vec<u32> = (0..m.nodes.len()).map(|i| m.degree(i)).collect();
        ensure(degrees.iter().all(|&d| d == 2) && m.mark_equation_holds(), || format!("Z{q}: degrees {degrees:?}"))?;
        ensure(m.ade_type().map(|t| t.to_string()) == Some(format!("~A{}", q - 1)), || format!("Z{q} type"))?;
    }
    for (g, (ty, degrees)) in polyhedral().iter().zip([
        ("~E6", vec![1, 1, 1, 2, 2, 2, 3]),
        ("~E7", vec![1, 1, 1, 2, 2, 2, 2, 3]),
        ("~E8", vec![1, 1, 1, 2, 2, 2, 2, 2, 3]),
    ]) {
        let m = mckay_graph(g).map_err(|e| e.to_string())?;
        let mut seq: Vec<u32> = (0..m.nodes.len()).map(|i| m.degree(i)).collect();
        seq.sort_unstable();
        ensure(seq == degrees, || format!("{} degree sequence {seq:?}", g.name()))?;
        ensure(m.mark_equation_holds() && m.is_symmetric() && m.has_zero_diagonal(), || format!("{} marks", g.name()))?;
        ensure(m.ade_type().map(|t| t.to_string()).as_deref() == Some(ty), || format!("{} type", g.name()))?;

        let GroupKind::BinaryPolyhedral { l, m: mm, n } = g.kind() else { unreachable!() };
        let d = compactified_diagram(g).map_err(|e| e.to_string())?;
        let want = vec![l as usize - 1, mm as usize - 1, n as usize - 1];
        ensure(d.arc_sizes() == want, || format!("{} arcs {:?}", g.name(), d.arc_sizes()))?;
        // gluing comes from the computed fusion [S^r] = [T^-r], and only in 2T
        let fused = (1..6).any(|r| {
            let s = g.power(g.generator("S").unwrap(), r);
            (1..2 * n as usize).any(|k| {
                let t = g.power(g.generator("T").unwrap(), k);
                g.class_of(s) == g.class_of(t) && g.class_of(s) != g.class_of(g.identity()) && Some(s) != g.neg_identity()
            })
        });
        ensure(fused == (g.name() == "2T") && fused == !d.gluings.is_empty(), || format!("{} gluing", g.name()))?;
        ensure(d.relinked_type.map(|t| t.to_string()).as_deref() == Some(ty), || format!("{} re-linking", g.name()))?;
    }
    Ok(())
}

fn c13_sunada() -> Outcome {
    let g = group_from_selector("2T").unwrap();
    let pair = sunada_cyclic(&g, ("S", 1), ("T", 5), 60).map_err(|e| e.to_string())?;
    ensure(pair.equivalent && pair.isospectral == Some(true), || format!("(1, 5): {pair:?}"))?;
    let other = sunada_cyclic(&g, ("S", 1), ("T", 1), 60).map_err(|e| e.to_string())?;
    ensure(!other.equivalent, || "(1, 1) reported equivalent".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("group construction", c1_groups),
        ("character table orthogonality", c2_tables),
        ("induction tables", c3_induction),
        ("inversion matrices", c4_matrices),
        ("isospectrality sweep", c5_isospectral),
        ("torsion anchor", c6_torsion),
        ("Z2 relations", c7_relations),
        ("dimension relation", c8_dimension),
        ("oracle agreement", c9_oracle),
        ("conjugation identities", c10_conjugation),
        ("induced matrices", c11_induced_matrices),
        ("McKay graphs and class diagrams", c12_mckay),
        ("Sunada pairs", c13_sunada),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS {name} ({secs:.1} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{failed} criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}

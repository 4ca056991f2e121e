use std::collections::BTreeSet;

use loopdl::weyl::{CoxeterSys, WeylElt};

fn systems() -> Vec<CoxeterSys> {
    let mut v: Vec<CoxeterSys> = ["A1", "A2", "A3", "B2", "B3", "G2", "I2(5)", "H3"].iter().map(|l| CoxeterSys::from_label(l).unwrap()).collect();
    v.push(CoxeterSys::type_a_flip(2).unwrap());
    v.push(CoxeterSys::type_a_flip(3).unwrap());
    v.push(CoxeterSys::with_sigma("B2", vec![1, 0]).unwrap());
    v
}

// Classes by brute-force conjugation x^{-1} w σ(x) over all x.
fn brute_classes(w: &CoxeterSys) -> Vec<BTreeSet<WeylElt>> {
    let mut out: Vec<BTreeSet<WeylElt>> = Vec::new();
    for a in w.elements() {
        if out.iter().any(|c| c.contains(&a)) {
            continue;
        }
        out.push(w.elements().map(|x| w.sigma_conj(x, a)).collect());
    }
    out
}

#[test]
fn classes_match_brute_force() {
    for w in systems() {
        let classes = w.sigma_classes();
        let brute = brute_classes(&w);
        assert_eq!(classes.len(), brute.len(), "{w}");
        assert_eq!(classes.iter().map(|c| c.elements.len()).sum::<usize>(), w.order());
        for (c, b) in classes.iter().zip(&brute) {
            let set: BTreeSet<WeylElt> = c.elements.iter().copied().collect();
            assert_eq!(&set, b, "{w}");
            for &x in &c.elements {
                for s in 0..w.rank() {
                    assert!(set.contains(&w.sigma_conj_simple(s, x)));
                }
            }
            let min = b.iter().map(|&x| w.length(x)).min().unwrap();
            assert_eq!(c.min_length, min);
            assert!(c.cmin.iter().all(|&x| w.length(x) == min));
            assert_eq!(c.cmin.len(), b.iter().filter(|&&x| w.length(x) == min).count());
            // cuspidal: no element lies in a proper σ-stable parabolic
            let proper_stable: Vec<BTreeSet<usize>> = (0..(1u32 << w.rank()) - 1)
                .map(|mask| (0..w.rank()).filter(|i| mask & (1 << i) != 0).collect::<BTreeSet<_>>())
                .filter(|j| w.is_sigma_stable(j))
                .collect();
            let meets = b.iter().any(|&x| proper_stable.iter().any(|j| w.supp(x).is_subset(j)));
            assert_eq!(c.cuspidal, !meets, "{w}");
        }
    }
}

#[test]
fn a2_and_a3_flip_counts() {
    let a2 = CoxeterSys::from_label("A2").unwrap();
    assert_eq!(a2.sigma_classes().len(), 3);
    let a3 = CoxeterSys::type_a_flip(3).unwrap();
    let cl = a3.sigma_classes();
    assert_eq!(cl.len(), brute_classes(&a3).len());
}

#[test]
fn shifts_are_symmetric_and_connect_cuspidal_cmin() {
    for w in systems() {
        for c in w.sigma_classes() {
            for &a in &c.cmin {
                for &b in &c.cmin {
                    let ab = w.cyclic_shift_path(a, b).unwrap();
                    let ba = w.cyclic_shift_path(b, a).unwrap();
                    assert_eq!(ab.is_some(), ba.is_some(), "{w}");
                    if c.cuspidal {
                        assert!(ab.is_some(), "{w}: {} -> {}", w.format(a), w.format(b));
                    }
                    if let Some(path) = ab {
                        let mut cur = a;
                        for st in path {
                            assert_eq!(st.from, cur);
                            assert_eq!(w.mul(st.x, st.y), cur);
                            assert_eq!(w.length(st.x) + w.length(st.y), w.length(cur));
                            assert_eq!(w.mul(st.y, w.apply_sigma(st.x)), st.to);
                            assert_eq!(w.length(st.to), w.length(cur));
                            cur = st.to;
                        }
                        assert_eq!(cur, b);
                    }
                }
            }
        }
    }
}

#[test]
fn descent_reaches_cmin() {
    for w in systems() {
        let classes = w.sigma_classes();
        for x in w.elements() {
            let steps = w.descent_to_min(x);
            let mut cur = x;
            for st in &steps {
                assert_eq!(st.from, cur);
                assert_eq!(w.sigma_conj_simple(st.s, cur), st.to);
                assert!(w.length(st.to) <= w.length(cur));
                cur = st.to;
            }
            let c = classes.iter().find(|c| c.elements.contains(&x)).unwrap();
            assert!(c.cmin.contains(&cur), "{w}: {}", w.format(x));
        }
    }
}

// J and J' conjugate: x J x^{-1} = J' as sets of simple reflections.
fn conjugate_subsets(w: &CoxeterSys, j1: &BTreeSet<usize>, j2: &BTreeSet<usize>) -> bool {
    let simples: Vec<WeylElt> = (0..w.rank()).map(|s| w.simple(s)).collect();
    w.elements().any(|x| {
        let img: Option<BTreeSet<usize>> = j1
            .iter()
            .map(|&s| {
                let c = w.mul(w.mul(x, simples[s]), w.inverse(x));
                simples.iter().position(|&t| t == c)
            })
            .collect();
        img.as_ref() == Some(j2)
    })
}

#[test]
fn suppbar_of_cmin_is_one_conjugacy_orbit() {
    for l in ["A1", "A2", "A3", "B2", "B3", "G2"] {
        let w = CoxeterSys::from_label(l).unwrap();
        for c in w.sigma_classes() {
            let sets: Vec<BTreeSet<usize>> = c.cmin.iter().map(|&x| w.suppbar(x)).collect();
            for s in &sets {
                assert!(conjugate_subsets(&w, &sets[0], s), "{l}: {:?} vs {:?}", sets[0], s);
            }
        }
    }
}

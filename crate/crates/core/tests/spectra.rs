use torus_curves::experiments::{length_spectrum, length_spectrum_with};
use torus_curves::geometry::{build_metric, MetricParams};
use torus_curves::intersect::self_intersection;
use torus_curves::words::enumerate_classes;
use torus_curves::ClassKey;

fn key(s: &str) -> ClassKey {
    ClassKey::parse(s).unwrap()
}

fn metrics() -> [MetricParams; 2] {
    [
        MetricParams::new(1.0, 1.2, 1.012).unwrap(),
        MetricParams::new(0.89, 0.889, 0.2149).unwrap(),
    ]
}

#[test]
fn spectrum_of_a_recounted_from_all_classes() {
    let rep = build_metric(&metrics()[0]).unwrap();
    let cap = 12.0;
    let sp = length_spectrum(&key("a"), &rep, cap).unwrap();
    // Simple classes other than the boundary are exactly the orbit of a.
    let boundary = key("abAB");
    let wl = (cap / rep.c).ceil() as usize;
    let recount = enumerate_classes(wl)
        .unwrap()
        .filter(|k| k.is_primitive() && *k != boundary)
        .filter(|k| self_intersection(k).unwrap() == 0)
        .filter(|k| rep.geodesic_length(k).unwrap() <= cap)
        .count();
    assert_eq!(sp.count(), recount);
}

#[test]
fn larger_word_cap_adds_nothing_below_the_geometric_cap() {
    for params in metrics() {
        let rep = build_metric(&params).unwrap();
        for seed in ["a", "aabAB", "abaB"] {
            let sp = length_spectrum_with(&key(seed), &rep, 30.0, Some(40)).unwrap();
            let wider =
                length_spectrum_with(&key(seed), &rep, sp.cap_geometric, Some(sp.word_cap + 10))
                    .unwrap();
            assert_eq!(sp.entries, wider.entries, "{seed} {params:?}");
        }
    }
}

#[test]
fn lengths_dominate_word_length() {
    for params in metrics() {
        let rep = build_metric(&params).unwrap();
        let sp = length_spectrum_with(&key("aabAB"), &rep, 40.0, Some(30)).unwrap();
        for e in &sp.entries {
            assert!(e.length >= rep.c * e.class.len() as f64 - 1e-9, "{}", e.class);
        }
    }
}

#[test]
fn entries_are_sorted() {
    let rep = build_metric(&metrics()[0]).unwrap();
    let sp = length_spectrum(&key("a"), &rep, 15.0).unwrap();
    for w in sp.entries.windows(2) {
        assert!(w[0].length <= w[1].length);
    }
    let recomputed = sp.entries.iter().map(|e| rep.geodesic_length(&e.class).unwrap());
    assert_eq!(recomputed.fold(f64::INFINITY, f64::min), sp.min().unwrap());
}

use super::trace::{parse_trace, write_trace};
use super::*;
use crate::basis::{InstanceRef, SchemaTag};
use crate::monoid::{catalog, product_satisfaction};
use crate::word::{ident, w, Identity};

/// Equality of the two words in every substitution into A1 and into B1.
fn equivalent(u: &Word, v: &Word) -> bool {
    let a1 = catalog("A1").unwrap();
    let b1 = catalog("B1").unwrap();
    product_satisfaction(&a1, &b1, &Identity::new(u.clone(), v.clone())).unwrap()
}

fn canon_str(s: &str) -> String {
    canonical_form(&w(s)).unwrap().to_string()
}

fn words(alphabet: &str, max_len: usize) -> Vec<Word> {
    let letters: Vec<char> = alphabet.chars().collect();
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &c in &letters {
                next.push(format!("{p}{c}"));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.iter()
        .map(|s| w(if s.is_empty() { "1" } else { s }))
        .collect()
}

#[test]
fn small_examples() {
    assert_eq!(canon_str("xyx"), "x^2 y x^2");
    assert_eq!(canon_str("xxyy"), "x^2 y^2");
    assert_eq!(canon_str("yxyx"), "(xy)^2");
    assert_eq!(canon_str("xyxy"), "(xy)^2");
    assert_eq!(canon_str("1"), "1");
    assert_eq!(canon_str("abc"), "abc");
    assert_eq!(canon_str("xxx"), "x^2");
    assert_eq!(canon_str("xytxsy"), "(xy)^2 t x^2 s y^2");
}

#[test]
fn xyx_trace_checks() {
    let (c, t) = canonicalize(&w("xyx")).unwrap();
    assert_eq!(c.flatten(), w("xxyxx"));
    assert_eq!(t.end(), &w("xxyxx"));
    assert!(!t.is_empty());
    check_trace(&w("xyx"), &t).unwrap();
}

#[test]
fn alphabetize_examples() {
    let sq = Square::parse(&w("yxyx")).unwrap();
    let (p, t) = alphabetize_square(&sq).unwrap();
    assert_eq!(p.word(), w("xyxy"));
    check_trace(&w("yxyx"), &t).unwrap();
    assert!(t.steps.iter().all(|s| s.instance.tag == SchemaTag::E2));

    let (p, t) = alphabetize_square(&Square::parse(&w("xyxy")).unwrap()).unwrap();
    assert_eq!(p.word(), w("xyxy"));
    assert!(t.is_empty());

    let (p, t) = alphabetize_square(&Square::parse(&w("zyxzyx")).unwrap()).unwrap();
    assert_eq!(p.word(), w("xyzxyz"));
    // each transposition is one E5 step followed by one E6 step
    assert!(t
        .steps
        .iter()
        .all(|s| matches!(s.instance.tag, SchemaTag::E5 | SchemaTag::E6)));
    assert_eq!(t.len(), 2 * 3);
    check_trace(&w("zyxzyx"), &t).unwrap();
    assert!(equivalent(&w("zyxzyx"), &w("xyzxyz")));
}

#[test]
fn absorb_examples() {
    let cases = [
        ("xx", "xyxy"),
        ("xyxy", "xyxy"),
        ("yy", "yy"),
        ("zz", "xyzxyz"),
        ("yxyx", "xyzxyz"),
    ];
    for (zp, z) in cases {
        let (zp, z) = (
            Square::parse(&w(zp)).unwrap(),
            Square::parse(&w(z)).unwrap(),
        );
        let (left, right) = absorb(&zp, &z).unwrap();
        let lw = zp.realization().concat(&z.realization());
        let rw = z.realization().concat(&zp.realization());
        check_trace(&lw, &left).unwrap();
        check_trace(&rw, &right).unwrap();
        assert_eq!(left.end(), &z.realization());
        assert_eq!(right.end(), &z.realization());
        assert!(equivalent(&lw, &z.realization()));
        assert!(equivalent(&rw, &z.realization()));
    }
    let err = absorb(
        &Square::parse(&w("tt")).unwrap(),
        &Square::parse(&w("xx")).unwrap(),
    );
    assert!(matches!(err, Err(crate::Error::Square(_))));
}

#[test]
fn square_errors() {
    assert!(Square::parse(&w("xyx")).is_err());
    assert!(Square::parse(&w("xxxx")).is_err());
    assert!(Square::parse(&w("1")).is_err());
}

#[test]
fn square_normalize_examples() {
    let (sq, t) = square_normalize(&w("xyxy"), 0).unwrap();
    assert_eq!(sq, vec![PerfectSquare::new(&w("xy").content()).unwrap()]);
    check_trace(&w("xyxy"), &t).unwrap();

    let word = w("xyxty");
    let (sq, t) = square_normalize(&word, 0).unwrap();
    assert_eq!(sq, vec![PerfectSquare::new(&w("xy").content()).unwrap()]);
    check_trace(&word, &t).unwrap();
    assert!(equivalent(&word, t.end()));
    // the other block is left alone
    assert!(t
        .end()
        .letters()
        .ends_with(&[crate::Letter::new('t'), crate::Letter::new('y')]));

    let (sq, t) = square_normalize(&w("xxyy"), 0).unwrap();
    assert_eq!(sq.len(), 2);
    assert!(t.is_empty());
}

#[test]
fn boundary_insertion_examples() {
    let cand = cf::parse_canonical(&w("xxyytxxsyy")).err().unwrap();
    assert_eq!(cand.condition, "boundary");
    let c = CanonicalWord {
        w0: vec![
            PerfectSquare::new(&w("x").content()).unwrap(),
            PerfectSquare::new(&w("y").content()).unwrap(),
        ],
        pairs: vec![
            (w("t"), vec![PerfectSquare::new(&w("x").content()).unwrap()]),
            (w("s"), vec![PerfectSquare::new(&w("y").content()).unwrap()]),
        ],
    };
    let (out, t) = insert_boundary_squares(&c).unwrap();
    assert_eq!(out.to_string(), "(xy)^2 t x^2 s y^2");
    check_trace(&c.flatten(), &t).unwrap();
    assert!(t.steps.iter().any(|s| s.instance.tag == SchemaTag::E3));

    // already canonical: nothing to do
    let done = cf::parse_canonical(&w("xxaxyxyb")).unwrap();
    let (same, t) = insert_boundary_squares(&done).unwrap();
    assert_eq!(same, done);
    assert!(t.is_empty());

    // both letters in a later block
    let word = w("xxyyaxyxy");
    let (out, t) = canonicalize(&word).unwrap();
    assert!(cf::is_canonical(&out.flatten()), "{out}");
    check_trace(&word, &t).unwrap();
    assert!(equivalent(&word, &out.flatten()));
}

#[test]
fn exhaustive_two_and_three_letters() {
    let mut all = words("xy", 7);
    all.extend(words("xyz", 5));
    for u in &all {
        let (c, t) = canonicalize(u).unwrap();
        let flat = c.flatten();
        check_trace(u, &t).unwrap_or_else(|e| panic!("{u}: {e}"));
        assert_eq!(t.end(), &flat);
        let parsed = cf::parse_canonical(&flat).unwrap_or_else(|e| panic!("{u} -> {c}: {e}"));
        assert_eq!(parsed, c);
        assert_eq!(canonical_form(&flat).unwrap(), c, "idempotence on {u}");
        assert!(equivalent(u, &flat), "{u} vs {c}");
    }
}

#[test]
fn mixed_blocks() {
    for s in [
        "xyzxzyx",
        "xaybxcy",
        "xyaxybyx",
        "xtyxsyx",
        "xyxtsyxy",
        "abxyyxcdxy",
        "yxtxysxyt",
        "zxyxtzsyz",
        "xzyztxyszx",
        "xxyyzzaxyzbzyx",
    ] {
        let u = w(s);
        let (c, t) = canonicalize(&u).unwrap_or_else(|e| panic!("{u}: {e}"));
        check_trace(&u, &t).unwrap_or_else(|e| panic!("{u}: {e}"));
        cf::parse_canonical(&c.flatten()).unwrap_or_else(|e| panic!("{u} -> {c}: {e}"));
        assert!(equivalent(&u, &c.flatten()), "{u} vs {c}");
    }
}

#[test]
fn match_instance_examples() {
    let m = match_instance(&w("axyyxb"), &w("axyxyb"), &ident("xyyx = xyxy")).unwrap();
    assert_eq!(m.prefix, w("a"));
    assert_eq!(m.suffix, w("b"));
    assert_eq!(m.theta[&crate::Letter::new('x')], w("x"));
    assert_eq!(m.theta[&crate::Letter::new('y')], w("y"));

    let m = match_instance(&w("xxx"), &w("xx"), &ident("xx = xxx").flipped()).unwrap();
    assert!(m.prefix.is_empty() && m.suffix.is_empty());
    assert_eq!(m.theta[&crate::Letter::new('x')], w("x"));

    assert!(match_instance(&w("xy"), &w("xy"), &ident("x = y")).is_some());
    assert!(match_instance(&w("xy"), &w("xy"), &ident("xx = x")).is_none());
    assert!(match_instance(&w("xy"), &w("xy"), &ident("x = x")).is_some());
}

#[test]
fn forged_step_is_rejected() {
    let (_, mut t) = canonicalize(&w("xyx")).unwrap();
    let first = t.steps[0].clone();
    t.steps.insert(
        0,
        Step {
            before: w("xyx"),
            after: w("xy"),
            ..first.clone()
        },
    );
    let err = check_trace(&w("xyx"), &t).unwrap_err();
    assert_eq!(err.step, 0);
    assert!(check_trace(&w("xyx"), &DerivationTrace::empty(w("xyx"))).is_ok());
    let err = check_trace(&w("yxy"), &DerivationTrace::empty(w("xyx"))).unwrap_err();
    assert_eq!(err.step, 0);
}

#[test]
fn miscited_but_valid_step_is_accepted() {
    let (_, mut t) = canonicalize(&w("xyx")).unwrap();
    t.steps[0].instance = InstanceRef::new(SchemaTag::E2, 0, 3);
    check_trace(&w("xyx"), &t).unwrap();
}

#[test]
fn trace_file_round_trip() {
    let u = w("xytxsyx");
    let (_, t) = canonicalize(&u).unwrap();
    let text = write_trace(&t);
    assert!(text.lines().nth(1).unwrap().contains(" ; schema=E"));
    let back = parse_trace(&text).unwrap();
    assert_eq!(back, t);
    let empty = DerivationTrace::empty(w("xx"));
    assert_eq!(parse_trace(&write_trace(&empty)).unwrap(), empty);
}

#[test]
fn renaming_equivariance_example() {
    // x < y < z mapped to a < b < c keeps the order
    let u = w("zxyxzy");
    let c1 = canonical_form(&u).unwrap().flatten();
    let rename = |l: crate::Letter| match l.as_char() {
        Some('x') => crate::Letter::new('a'),
        Some('y') => crate::Letter::new('b'),
        _ => crate::Letter::new('c'),
    };
    let c2 = canonical_form(&u.map_letters(rename)).unwrap().flatten();
    assert_eq!(c2, c1.map_letters(rename));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn word_over(alphabet: &'static str, max_len: usize) -> impl Strategy<Value = Word> {
        let letters: Vec<char> = alphabet.chars().collect();
        prop::collection::vec(prop::sample::select(letters), 0..=max_len).prop_map(|cs| {
            let s: String = cs.into_iter().collect();
            w(if s.is_empty() { "1" } else { &s })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn canonical_form_is_sound_and_stable(u in word_over("xyzt", 10)) {
            let (c, t) = canonicalize(&u).unwrap();
            let flat = c.flatten();
            prop_assert!(check_trace(&u, &t).is_ok());
            prop_assert_eq!(t.end(), &flat);
            prop_assert!(cf::is_canonical(&flat), "{} -> {}", u, c);
            prop_assert_eq!(canonical_form(&flat).unwrap(), c.clone());
            prop_assert!(equivalent(&u, &flat), "{} vs {}", u, c);
        }

        #[test]
        fn renaming_commutes_with_canonical_form(u in word_over("xyzt", 10)) {
            // t < x < y < z goes to a < b < c < d
            let rename = |l: crate::Letter| match l.as_char() {
                Some('t') => crate::Letter::new('a'),
                Some('x') => crate::Letter::new('b'),
                Some('y') => crate::Letter::new('c'),
                _ => crate::Letter::new('d'),
            };
            let c1 = canonical_form(&u).unwrap().flatten();
            let c2 = canonical_form(&u.map_letters(rename)).unwrap().flatten();
            prop_assert_eq!(c2, c1.map_letters(rename));
        }

        #[test]
        fn equal_forms_iff_equivalent(u in word_over("xyz", 6), v in word_over("xyz", 6)) {
            let same = canonical_form(&u).unwrap() == canonical_form(&v).unwrap();
            prop_assert_eq!(same, equivalent(&u, &v), "{} vs {}", u, v);
        }
    }
}

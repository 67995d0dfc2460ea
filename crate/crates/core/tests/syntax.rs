use proptest::prelude::*;

use mirror_core::{from_structured, parse, print, to_structured, Term};

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::base()), Just(Term::self_ref())];
    leaf.prop_recursive(64, 64, 1, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::node),
            inner.clone().prop_map(Term::cap),
            inner.clone().prop_map(Term::enter),
            (any::<String>(), inner).prop_map(|(l, t)| Term::named(l, t)),
        ]
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(t in arb_term()) {
        let text = print(&t);
        prop_assert_eq!(parse(&text).unwrap(), t);
    }

    #[test]
    fn structured_is_lossless_and_injective(a in arb_term(), b in arb_term()) {
        let (da, db) = (to_structured(&a), to_structured(&b));
        prop_assert_eq!(from_structured(&da).unwrap(), a.clone());
        prop_assert_eq!(da == db, a == b);
    }

    #[test]
    fn parser_never_panics(s in "\\PC{0,40}") {
        let _ = parse(&s);
    }

    #[test]
    fn parser_never_panics_near_the_grammar(s in "[a-z()\",\\\\{} u0-9]{0,40}") {
        if let Err(e) = parse(&s) {
            prop_assert!(e.byte_offset <= s.len());
            prop_assert!(s.is_char_boundary(e.byte_offset));
        }
    }

    #[test]
    fn whitespace_between_tokens_is_ignored(t in arb_term()) {
        let spaced = print(&t)
            .replace('(', " (\n ")
            .replace(')', "\t) ")
            .replace(", ", " ,  ");
        // labels may themselves contain these characters, so only compare
        // when the substitutions stayed outside string literals
        if !print(&t).contains('"') {
            prop_assert_eq!(parse(&spaced).unwrap(), t);
        }
    }
}

#[test]
fn labels_are_opaque_unicode() {
    for label in [
        "",
        " ",
        "ünïcødé",
        "😀",
        "a,b",
        "(x)",
        "\"",
        "\\",
        "\u{0}",
        "\u{7f}",
    ] {
        let t = Term::paradox(label);
        assert_eq!(parse(&print(&t)).unwrap(), t, "{label:?}");
    }
}

use std::sync::Arc;

use proptest::prelude::*;
use serde_json::Value;
use xalg::bundle::{parse_bundle, serialize_bundle, ActionSpec, Bundle, BundleError, GroupSpec, HomSpec};
use xalg::catalog::catalog;
use xalg::emit::Emitter;
use xalg::resolve::Resolver;
use xalg_core::group::{semidirect_product, FiniteGroup, GroupAction};

/// JSON text with every object's keys written in reverse order.
fn reversed(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let parts: Vec<String> =
                m.iter().rev().map(|(k, v)| format!("{}:{}", Value::String(k.clone()), reversed(v))).collect();
            format!("{{{}}}", parts.join(","))
        }
        Value::Array(a) => format!("[{}]", a.iter().map(reversed).collect::<Vec<_>>().join(",")),
        other => other.to_string(),
    }
}

#[test]
fn builtin_reference_resolves_to_catalog_table() {
    let b = parse_bundle(r#"{"groups":{"s":{"kind":"builtin","name":"sym3"}}}"#).unwrap();
    let g = Resolver::new(&b).group("s").unwrap();
    assert_eq!(g.rows(), FiniteGroup::sym3().rows());
}

#[test]
fn wrong_map_length_is_a_shape_error() {
    let text = r#"{"groups":{"z3":{"kind":"cyclic","n":3}},"homs":{"f":{"dom":"z3","cod":"z3","map":[0,1]}}}"#;
    assert!(matches!(parse_bundle(text), Err(BundleError::Shape { path, .. }) if path == "$.homs.f.map"));
}

#[test]
fn dangling_names_are_rejected() {
    let text = r#"{"xmods":{"x":{"boundary":"f","action":"g"}}}"#;
    assert!(matches!(parse_bundle(text), Err(BundleError::UnknownReference { name, .. }) if name == "f"));
    let text = r#"{"xmods":{"x":{"kind":"builtin","name":"no_such_xmod"}}}"#;
    assert!(matches!(parse_bundle(text), Err(BundleError::UnknownReference { .. })));
}

#[test]
fn catalog_bundles_round_trip_byte_identically() {
    let c = catalog();
    let mut texts = vec![serialize_bundle(&c.reference_bundle())];
    for (_, name) in c.entries() {
        texts.push(serialize_bundle(&c.emit(&name).unwrap()));
    }
    for t in texts {
        let b = parse_bundle(&t).unwrap();
        assert_eq!(serialize_bundle(&b), t);
        let shuffled = reversed(&serde_json::from_str(&t).unwrap());
        assert_eq!(parse_bundle(&shuffled).unwrap(), b);
    }
}

#[test]
fn emitted_entries_validate_to_the_same_structures() {
    let c = catalog();
    for (name, x) in &c.xmods {
        let b = parse_bundle(&serialize_bundle(&c.emit(name).unwrap())).unwrap();
        assert_eq!(&Resolver::new(&b).xmod(name).unwrap(), x);
    }
    for (name, s) in &c.xsqs {
        let b = parse_bundle(&serialize_bundle(&c.emit(name).unwrap())).unwrap();
        assert_eq!(&Resolver::new(&b).xsq(name).unwrap(), s);
    }
    for (name, cx) in &c.catxmods {
        let b = parse_bundle(&serialize_bundle(&c.emit(name).unwrap())).unwrap();
        assert_eq!(&Resolver::new(&b).catxmod(name).unwrap(), cx);
    }
}

#[test]
fn semidirect_product_emits_and_reparses_identically() {
    let s3 = Arc::new(FiniteGroup::sym3());
    let sd = semidirect_product(&GroupAction::conjugation(s3)).unwrap();
    let mut e = Emitter::default();
    e.group("s3_by_s3", &sd.group);
    e.hom("proj", &sd.proj);
    let text = serialize_bundle(&e.finish());
    let b = parse_bundle(&text).unwrap();
    assert_eq!(serialize_bundle(&b), text);
    let r = Resolver::new(&b);
    assert_eq!(r.group("s3_by_s3").unwrap().rows(), sd.group.rows());
    assert_eq!(r.hom("proj").unwrap(), sd.proj);
}

#[test]
fn fixture_is_canonical() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/mutated.bundle")).unwrap();
    assert_eq!(serialize_bundle(&parse_bundle(&text).unwrap()), text);
}

fn arb_bundle() -> impl Strategy<Value = Bundle> {
    let group = prop_oneof![
        (1usize..6).prop_map(GroupSpec::Cyclic),
        (1usize..6).prop_map(|n| GroupSpec::Table(FiniteGroup::cyclic(n).rows())),
        prop::sample::select(vec!["z1", "z2", "sym3", "klein4"]).prop_map(|n| GroupSpec::Builtin(n.to_owned())),
    ];
    prop::collection::vec(group, 1..4)
        .prop_flat_map(|groups| {
            let k = groups.len();
            let homs = prop::collection::vec((0..k, 0..k, prop::collection::vec(0usize..8, 0..40)), 0..4);
            let acts = prop::collection::vec((0..k, 0..k, prop::collection::vec(0usize..8, 0..40)), 0..3);
            (Just(groups), homs, acts)
        })
        .prop_map(|(groups, homs, acts)| {
            let order = |g: &GroupSpec| match g {
                GroupSpec::Cyclic(n) => *n,
                GroupSpec::Table(t) => t.len(),
                GroupSpec::Builtin(n) => catalog().groups[n].order(),
            };
            let mut b = Bundle::default();
            let names: Vec<String> = (0..groups.len()).map(|i| format!("g{i}")).collect();
            for (n, g) in names.iter().zip(&groups) {
                b.groups.insert(n.clone(), g.clone());
            }
            for (i, (d, c, vals)) in homs.into_iter().enumerate() {
                let map = (0..order(&groups[d])).map(|x| vals.get(x).copied().unwrap_or(0)).collect();
                b.homs.insert(format!("h{i}"), HomSpec { dom: names[d].clone(), cod: names[c].clone(), map });
            }
            for (i, (actor, space, vals)) in acts.into_iter().enumerate() {
                let (nb, na) = (order(&groups[actor]), order(&groups[space]));
                let table =
                    (0..nb).map(|p| (0..na).map(|x| vals.get(p * na + x).copied().unwrap_or(x)).collect()).collect();
                b.actions.insert(
                    format!("a{i}"),
                    ActionSpec { actor: names[actor].clone(), space: names[space].clone(), table },
                );
            }
            b
        })
}

proptest! {
    #[test]
    fn parse_inverts_serialize(b in arb_bundle()) {
        let text = serialize_bundle(&b);
        let back = parse_bundle(&text).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(serialize_bundle(&back), text);
    }

    #[test]
    fn key_order_does_not_matter(b in arb_bundle()) {
        let text = serialize_bundle(&b);
        let shuffled = reversed(&serde_json::from_str(&text).unwrap());
        prop_assert_eq!(serialize_bundle(&parse_bundle(&shuffled).unwrap()), text);
    }

    #[test]
    fn truncated_text_is_a_syntax_error(b in arb_bundle(), cut in 1usize..200) {
        let text = serialize_bundle(&b);
        let body = text.trim_end();
        let end = body.len() - cut.min(body.len());
        let end = (0..=end).rev().find(|&i| body.is_char_boundary(i)).unwrap_or(0);
        let syntax = matches!(parse_bundle(&body[..end]), Err(BundleError::Syntax { .. }));
        prop_assert!(syntax);
    }
}

//! Keeps `docs/bank.schema.json` in step with the bank loader: enum
//! spellings, property sets, required fields and closed objects. The shipped
//! banks are also run through a JSON Schema validator.

use esgai_core::bank::load_bank;
use esgai_core::model::{
    EsgTopic, MetricDirection, Obligation, OrgType, Principle, Provenance, SystemCategory,
};
use serde_json::{json, Value};

fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/bank.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn bank(file: &str) -> Value {
    let path = format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

fn wire<T: Copy>(all: &[T], spell: fn(T) -> &'static str) -> Vec<String> {
    all.iter().map(|v| spell(*v).to_string()).collect()
}

fn load_code(doc: &Value) -> Option<String> {
    load_bank(&doc.to_string())
        .err()
        .map(|e| e.code().to_string())
}

#[test]
fn shipped_banks_satisfy_the_schema() {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    for file in ["sample_bank.json", "complete_bank.json"] {
        let doc = bank(file);
        let errors: Vec<String> = validator
            .iter_errors(&doc)
            .map(|e| format!("{}: {e}", e.instance_path))
            .collect();
        assert!(errors.is_empty(), "{file}: {errors:?}");
    }
}

#[test]
fn enums_match_the_library() {
    let s = schema();
    let defs = &s["$defs"];
    let e = |name: &str| strings(&defs[name]["enum"]);
    assert_eq!(e("principle"), wire(Principle::ALL, Principle::as_str));
    assert_eq!(e("esg_topic"), wire(EsgTopic::ALL, EsgTopic::as_str));
    assert_eq!(
        e("system_category"),
        wire(SystemCategory::ALL, SystemCategory::as_str)
    );
    assert_eq!(e("org_type"), wire(OrgType::ALL, OrgType::as_str));
    assert_eq!(e("obligation"), wire(Obligation::ALL, Obligation::as_str));
    assert_eq!(e("provenance"), wire(Provenance::ALL, Provenance::as_str));
    assert_eq!(
        strings(&defs["metric"]["properties"]["direction"]["enum"]),
        wire(MetricDirection::ALL, MetricDirection::as_str)
    );
    assert_eq!(
        strings(&s["properties"]["completeness"]["enum"]),
        ["sample", "complete"]
    );
    assert_eq!(s["properties"]["schema"]["const"], "esgai.bank/v1");
}

/// Object definitions paired with a pointer to one instance in a bank.
fn objects() -> [(&'static str, &'static str); 4] {
    [
        ("", ""),
        ("/$defs/key_question", "/key_questions/0"),
        ("/$defs/sub_question", "/questions/0"),
        ("/$defs/metric", "/metrics/0"),
    ]
}

#[test]
fn shipped_banks_use_exactly_the_documented_properties() {
    let s = schema();
    for file in ["sample_bank.json", "complete_bank.json"] {
        let doc = bank(file);
        assert_eq!(load_code(&doc), None, "{file} loads");
        for (def, instance) in objects() {
            let def = s.pointer(def).unwrap();
            assert_eq!(def["additionalProperties"], false);
            let documented: Vec<&String> = def["properties"].as_object().unwrap().keys().collect();
            let items: Vec<&Value> = match instance {
                "" => vec![&doc],
                p => {
                    let array = p.trim_end_matches("/0");
                    doc.pointer(array)
                        .unwrap()
                        .as_array()
                        .unwrap()
                        .iter()
                        .collect()
                }
            };
            for item in items {
                for key in item.as_object().unwrap().keys() {
                    assert!(documented.contains(&key), "{file}: undocumented `{key}`");
                }
                for key in strings(&def["required"]) {
                    assert!(item.get(&key).is_some(), "{file}: missing `{key}`");
                }
            }
        }
    }
}

#[test]
fn required_lists_match_the_loader() {
    let s = schema();
    let validator = jsonschema::validator_for(&s).unwrap();
    let doc = bank("sample_bank.json");
    for (def, instance) in objects() {
        let def = s.pointer(def).unwrap();
        let required = strings(&def["required"]);
        for key in def["properties"].as_object().unwrap().keys() {
            let mut broken = doc.clone();
            let target = broken.pointer_mut(instance).unwrap();
            if target.as_object_mut().unwrap().remove(key).is_none() {
                continue;
            }
            let rejected_by_shape = load_code(&broken).as_deref() == Some("bank.schema");
            assert_eq!(
                rejected_by_shape,
                required.contains(key),
                "`{key}` at `{instance}`"
            );
            assert_eq!(
                validator.is_valid(&broken),
                !required.contains(key),
                "schema on `{key}` at `{instance}`"
            );
        }
        let mut extra = doc.clone();
        extra
            .pointer_mut(instance)
            .unwrap()
            .as_object_mut()
            .unwrap()
            .insert("unexpected".into(), json!(1));
        assert_eq!(load_code(&extra).as_deref(), Some("bank.schema"));
        assert!(!validator.is_valid(&extra));
    }
}

#[test]
fn misspelled_enum_values_are_rejected() {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let doc = bank("sample_bank.json");
    for (pointer, value) in [
        ("/completeness", "partial"),
        ("/questions/0/principle", "hse"),
        ("/questions/0/esg_topics/0", "E4"),
        ("/questions/0/org_types/0", "vendor"),
        ("/metrics/0/direction", "smaller-better"),
    ] {
        let mut broken = doc.clone();
        let slot = broken
            .pointer_mut(pointer)
            .unwrap_or_else(|| panic!("{pointer}"));
        *slot = json!(value);
        assert_eq!(
            load_code(&broken).as_deref(),
            Some("bank.schema"),
            "{pointer}"
        );
        assert!(!validator.is_valid(&broken), "{pointer}");
    }
}

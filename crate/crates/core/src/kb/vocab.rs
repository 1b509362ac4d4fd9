//! IRIs of the food explanation vocabulary and the standard namespaces it
//! builds on.

use crate::rdf::Term;

macro_rules! iris {
    ($ns:literal; $($name:ident = $local:literal),* $(,)?) => {
        $(pub const $name: &str = concat!($ns, $local);)*
        pub const ALL: &[&str] = &[$($name),*];
    };
}

pub mod ns {
    pub const FEO: &str = "https://purl.org/heals/feo#";
    pub const EO: &str = "https://purl.org/heals/eo#";
    pub const FOOD: &str = "http://purl.org/heals/food/";
    pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
    pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
}

/// Prefix bindings used for compact output and for expanding CURIEs given
/// on the command line.
pub const PREFIXES: &[(&str, &str)] = &[
    ("feo", ns::FEO),
    ("eo", ns::EO),
    ("food", ns::FOOD),
    ("rdf", ns::RDF),
    ("rdfs", ns::RDFS),
    ("owl", ns::OWL),
    ("xsd", ns::XSD),
];

pub mod rdf {
    iris!("http://www.w3.org/1999/02/22-rdf-syntax-ns#"; TYPE = "type");
}

pub mod rdfs {
    iris!("http://www.w3.org/2000/01/rdf-schema#";
        SUB_CLASS_OF = "subClassOf",
        SUB_PROPERTY_OF = "subPropertyOf",
        DOMAIN = "domain",
        RANGE = "range",
        LABEL = "label",
    );
}

pub mod owl {
    iris!("http://www.w3.org/2002/07/owl#";
        CLASS = "Class",
        OBJECT_PROPERTY = "ObjectProperty",
        DATATYPE_PROPERTY = "DatatypeProperty",
        TRANSITIVE_PROPERTY = "TransitiveProperty",
        INVERSE_OF = "inverseOf",
        IMPORTS = "imports",
        ONTOLOGY = "Ontology",
    );
}

pub mod eo {
    iris!("https://purl.org/heals/eo#";
        FACT = "Fact",
        FOIL = "Foil",
        KNOWLEDGE = "knowledge",
    );
}

pub mod food {
    iris!("http://purl.org/heals/food/"; FOOD = "Food");
}

pub mod feo {
    iris!("https://purl.org/heals/feo#";
        // classes
        CHARACTERISTIC = "Characteristic",
        PARAMETER = "Parameter",
        ECOSYSTEM_CHARACTERISTIC = "EcosystemCharacteristic",
        USER_CHARACTERISTIC = "UserCharacteristic",
        SYSTEM_CHARACTERISTIC = "SystemCharacteristic",
        OPPOSING_CHARACTERISTIC = "OpposingCharacteristic",
        SEASON_CHARACTERISTIC = "SeasonCharacteristic",
        LOCATION_CHARACTERISTIC = "LocationCharacteristic",
        BUDGET_CHARACTERISTIC = "BudgetCharacteristic",
        ALLERGIC_FOOD_CHARACTERISTIC = "AllergicFoodCharacteristic",
        DISLIKED_FOOD_CHARACTERISTIC = "DislikedFoodCharacteristic",
        LIKED_FOODS = "LikedFoods",
        INGREDIENT = "Ingredient",
        DIET = "Diet",
        USER = "User",
        SYSTEM = "System",
        // properties
        HAS_PARAMETER = "hasParameter",
        HAS_PRIMARY_PARAMETER = "hasPrimaryParameter",
        HAS_SECONDARY_PARAMETER = "hasSecondaryParameter",
        HAS_CHARACTERISTIC = "hasCharacteristic",
        IS_CHARACTERISTIC_OF = "isCharacteristicOf",
        IS_OPPOSED_BY = "isOpposedBy",
        FORBIDS = "forbids",
        RECOMMENDS = "recommends",
        DISLIKE = "dislike",
        DISLIKED_BY = "dislikedBy",
        LIKES = "likes",
        ALLERGIC_TO = "allergicTo",
        HAS_INGREDIENT = "hasIngredient",
        IS_INGREDIENT_OF = "isIngredientOf",
        AVAILABLE_IN = "availableIn",
        PART_OF_DIET = "partOfDiet",
        HAS_SEASON = "hasSeason",
        HAS_REGION = "hasRegion",
        IS_INTERNAL = "isInternal",
        // demo individuals referenced by the shipped queries
        WHY_EAT_CAULIFLOWER_POTATO_CURRY = "WhyEatCauliflowerPotatoCurry",
        WHY_EAT_BUTTERNUT_SQUASH_SOUP_OVER_BROCCOLI_CHEDDAR_SOUP =
            "WhyEatButternutSquashSoupOverBroccoliCheddarSoup",
        WHAT_IF_I_WAS_PREGNANT = "WhatIfIWasPregnant",
        HEALTH_COACH = "HealthCoach",
    );
}

/// Every IRI in the vocabulary.
pub fn all() -> impl Iterator<Item = &'static str> {
    [rdf::ALL, rdfs::ALL, owl::ALL, eo::ALL, food::ALL, feo::ALL]
        .into_iter()
        .flatten()
        .copied()
}

pub fn contains(iri: &str) -> bool {
    all().any(|v| v == iri)
}

pub fn term(iri: &'static str) -> Term {
    Term::iri(iri)
}

/// Expands `prefix:local` using [`PREFIXES`]; `<iri>` and bare absolute IRIs
/// are returned unchanged.
pub fn expand_curie(text: &str) -> Option<String> {
    if let Some(inner) = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        return Some(inner.to_string());
    }
    let (prefix, local) = text.split_once(':')?;
    if local.starts_with("//") {
        return Some(text.to_string());
    }
    PREFIXES
        .iter()
        .find(|(p, _)| *p == prefix)
        .map(|(_, ns)| format!("{ns}{local}"))
}

/// The shortest `prefix:local` form of `iri`, if a known namespace matches
/// and the local part is a simple name.
pub fn compact<'a>(
    iri: &str,
    prefixes: impl IntoIterator<Item = (&'a str, &'a str)>,
) -> Option<String> {
    let mut best: Option<(&str, &str)> = None;
    for (prefix, ns) in prefixes {
        if let Some(local) = iri.strip_prefix(ns) {
            let better = match best {
                None => true,
                Some((bp, bl)) => {
                    local.len() < bl.len() || (local.len() == bl.len() && prefix < bp)
                }
            };
            if better && is_simple_local(local) {
                best = Some((prefix, local));
            }
        }
    }
    best.map(|(p, l)| format!("{p}:{l}"))
}

fn is_simple_local(local: &str) -> bool {
    let mut chars = local.chars();
    chars
        .next()
        .is_some_and(|c| c.is_alphanumeric() || c == '_')
        && local
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !local.ends_with('.')
}

use crate::rdf::Iri;

/// Default DINGO namespace.
pub const DINGO_NS: &str = "https://w3id.org/dingo#";

/// DINGO term constants minted against a configurable base IRI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dingo {
    base: String,
}

impl Default for Dingo {
    fn default() -> Self {
        Dingo {
            base: DINGO_NS.to_owned(),
        }
    }
}

macro_rules! dingo_terms {
    ($($method:ident => $local:expr),* $(,)?) => {
        impl Dingo {
            $(
                pub fn $method(&self) -> Iri {
                    self.term($local)
                }
            )*
        }
    };
}

impl Dingo {
    /// Fails when `base` is not an absolute IRI.
    pub fn new(base: impl Into<String>) -> Result<Self, crate::rdf::TermError> {
        let base = base.into();
        Iri::new(base.clone())?;
        Ok(Dingo { base })
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn term(&self, local: &str) -> Iri {
        Iri::new(format!("{}{local}", self.base)).expect("base is absolute and locals are plain names")
    }

    /// The principal classes, in the order they are usually presented.
    pub fn principal_classes(&self) -> Vec<Iri> {
        vec![
            self.project(),
            self.grant(),
            self.funding_agency(),
            self.funding_scheme(),
            self.role(),
            self.person(),
            self.organisation(),
            self.criterion(),
        ]
    }
}

dingo_terms! {
    project => "Project",
    grant => "Grant",
    funding_agency => "FundingAgency",
    funding_scheme => "FundingScheme",
    role => "Role",
    person => "Person",
    organisation => "Organisation",
    university_organisation => "UniversityOrganisation",
    criterion => "Criterion",
    participation => "Participation",
    start_time => "start_time",
    end_time => "end_time",
    inception => "inception",
    product_or_material_produced => "product_or_material_produced",
    funds => "funds",
    is_funded_by => "is_funded_by",
    has_beneficiary => "has_beneficiary",
    is_beneficiary_of => "is_beneficiary_of",
    has_participant => "has_participant",
    is_participant_in => "is_participant_in",
    has_participation => "has_participation",
    has_agent => "has_agent",
    has_role => "has_role",
    is_subscheme_of => "is_subscheme_of",
    has_subscheme => "has_subscheme",
    has_criterion => "has_criterion",
    is_criterion_of => "is_criterion_of",
    has_funding_scheme => "has_funding_scheme",
    has_funding_agency => "has_funding_agency",
    award_date => "award_date",
    title => "title",
}

/// `foaf:Agent`, the common superclass of Person and Organisation in the snapshot.
pub const FOAF_AGENT: &str = "http://xmlns.com/foaf/0.1/Agent";

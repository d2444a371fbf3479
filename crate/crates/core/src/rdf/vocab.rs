//! IRIs of the W3C vocabularies the toolkit reads.

macro_rules! terms {
    ($ns:expr; $($konst:ident, $func:ident => $local:expr;)*) => {
        $(
            pub const $konst: &str = concat!($ns, $local);
            pub fn $func() -> crate::rdf::Iri {
                crate::rdf::Iri::from_static($konst)
            }
        )*
    };
}

pub mod rdf {
    pub const NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    terms! { "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
        TYPE, type_ => "type";
        FIRST, first => "first";
        REST, rest => "rest";
        NIL, nil => "nil";
        LANG_STRING, lang_string => "langString";
    }
}

pub mod rdfs {
    pub const NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    terms! { "http://www.w3.org/2000/01/rdf-schema#";
        SUB_CLASS_OF, sub_class_of => "subClassOf";
        SUB_PROPERTY_OF, sub_property_of => "subPropertyOf";
        DOMAIN, domain => "domain";
        RANGE, range => "range";
        LABEL, label => "label";
        COMMENT, comment => "comment";
    }
}

pub mod owl {
    pub const NS: &str = "http://www.w3.org/2002/07/owl#";
    terms! { "http://www.w3.org/2002/07/owl#";
        ONTOLOGY, ontology => "Ontology";
        CLASS, class => "Class";
        OBJECT_PROPERTY, object_property => "ObjectProperty";
        DATATYPE_PROPERTY, datatype_property => "DatatypeProperty";
        ANNOTATION_PROPERTY, annotation_property => "AnnotationProperty";
        NAMED_INDIVIDUAL, named_individual => "NamedIndividual";
        EQUIVALENT_CLASS, equivalent_class => "equivalentClass";
        EQUIVALENT_PROPERTY, equivalent_property => "equivalentProperty";
        INVERSE_OF, inverse_of => "inverseOf";
        VERSION_INFO, version_info => "versionInfo";
    }
}

pub mod xsd {
    pub const NS: &str = "http://www.w3.org/2001/XMLSchema#";
    terms! { "http://www.w3.org/2001/XMLSchema#";
        STRING, string => "string";
        BOOLEAN, boolean => "boolean";
        INTEGER, integer => "integer";
        DECIMAL, decimal => "decimal";
        DOUBLE, double => "double";
        DATE, date => "date";
        DATE_TIME, date_time => "dateTime";
        G_YEAR_MONTH, g_year_month => "gYearMonth";
        G_YEAR, g_year => "gYear";
    }
}

pub mod skos {
    pub const NS: &str = "http://www.w3.org/2004/02/skos/core#";
    terms! { "http://www.w3.org/2004/02/skos/core#";
        EXACT_MATCH, exact_match => "exactMatch";
        CLOSE_MATCH, close_match => "closeMatch";
        BROAD_MATCH, broad_match => "broadMatch";
        NARROW_MATCH, narrow_match => "narrowMatch";
        RELATED_MATCH, related_match => "relatedMatch";
    }
}

pub mod dcterms {
    pub const NS: &str = "http://purl.org/dc/terms/";
    terms! { "http://purl.org/dc/terms/";
        TITLE, title => "title";
        DESCRIPTION, description => "description";
    }
}

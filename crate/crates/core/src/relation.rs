use std::fmt;
use std::str::FromStr;

/// A typed WNdb pointer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationType {
    Hypernym,
    InstanceHypernym,
    Hyponym,
    InstanceHyponym,
    MemberHolonym,
    SubstanceHolonym,
    PartHolonym,
    MemberMeronym,
    SubstanceMeronym,
    PartMeronym,
    Antonym,
    Attribute,
    Entailment,
    Cause,
    AlsoSee,
    VerbGroup,
    SimilarTo,
    Participle,
    Pertainym,
    DerivationallyRelated,
    DomainTopic,
    DomainRegion,
    DomainUsage,
    MemberOfDomainTopic,
    MemberOfDomainRegion,
    MemberOfDomainUsage,
}

use RelationType::*;

impl RelationType {
    pub const ALL: [RelationType; 26] = [
        Hypernym,
        InstanceHypernym,
        Hyponym,
        InstanceHyponym,
        MemberHolonym,
        SubstanceHolonym,
        PartHolonym,
        MemberMeronym,
        SubstanceMeronym,
        PartMeronym,
        Antonym,
        Attribute,
        Entailment,
        Cause,
        AlsoSee,
        VerbGroup,
        SimilarTo,
        Participle,
        Pertainym,
        DerivationallyRelated,
        DomainTopic,
        DomainRegion,
        DomainUsage,
        MemberOfDomainTopic,
        MemberOfDomainRegion,
        MemberOfDomainUsage,
    ];

    pub fn from_symbol(sym: &str) -> Option<Self> {
        Some(match sym {
            "@" => Hypernym,
            "@i" => InstanceHypernym,
            "~" => Hyponym,
            "~i" => InstanceHyponym,
            "#m" => MemberHolonym,
            "#s" => SubstanceHolonym,
            "#p" => PartHolonym,
            "%m" => MemberMeronym,
            "%s" => SubstanceMeronym,
            "%p" => PartMeronym,
            "!" => Antonym,
            "=" => Attribute,
            "*" => Entailment,
            ">" => Cause,
            "^" => AlsoSee,
            "$" => VerbGroup,
            "&" => SimilarTo,
            "<" => Participle,
            "\\" => Pertainym,
            "+" => DerivationallyRelated,
            ";c" => DomainTopic,
            ";r" => DomainRegion,
            ";u" => DomainUsage,
            "-c" => MemberOfDomainTopic,
            "-r" => MemberOfDomainRegion,
            "-u" => MemberOfDomainUsage,
            _ => return None,
        })
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Hypernym => "@",
            InstanceHypernym => "@i",
            Hyponym => "~",
            InstanceHyponym => "~i",
            MemberHolonym => "#m",
            SubstanceHolonym => "#s",
            PartHolonym => "#p",
            MemberMeronym => "%m",
            SubstanceMeronym => "%s",
            PartMeronym => "%p",
            Antonym => "!",
            Attribute => "=",
            Entailment => "*",
            Cause => ">",
            AlsoSee => "^",
            VerbGroup => "$",
            SimilarTo => "&",
            Participle => "<",
            Pertainym => "\\",
            DerivationallyRelated => "+",
            DomainTopic => ";c",
            DomainRegion => ";r",
            DomainUsage => ";u",
            MemberOfDomainTopic => "-c",
            MemberOfDomainRegion => "-r",
            MemberOfDomainUsage => "-u",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Hypernym => "hypernym",
            InstanceHypernym => "instance_hypernym",
            Hyponym => "hyponym",
            InstanceHyponym => "instance_hyponym",
            MemberHolonym => "member_holonym",
            SubstanceHolonym => "substance_holonym",
            PartHolonym => "part_holonym",
            MemberMeronym => "member_meronym",
            SubstanceMeronym => "substance_meronym",
            PartMeronym => "part_meronym",
            Antonym => "antonym",
            Attribute => "attribute",
            Entailment => "entailment",
            Cause => "cause",
            AlsoSee => "also_see",
            VerbGroup => "verb_group",
            SimilarTo => "similar_to",
            Participle => "participle",
            Pertainym => "pertainym",
            DerivationallyRelated => "derivationally_related",
            DomainTopic => "domain_topic",
            DomainRegion => "domain_region",
            DomainUsage => "domain_usage",
            MemberOfDomainTopic => "member_of_domain_topic",
            MemberOfDomainRegion => "member_of_domain_region",
            MemberOfDomainUsage => "member_of_domain_usage",
        }
    }

    /// The relation materialized in the opposite direction, if WordNet pairs one.
    pub fn inverse(self) -> Option<Self> {
        Some(match self {
            Hypernym => Hyponym,
            Hyponym => Hypernym,
            InstanceHypernym => InstanceHyponym,
            InstanceHyponym => InstanceHypernym,
            MemberHolonym => MemberMeronym,
            MemberMeronym => MemberHolonym,
            SubstanceHolonym => SubstanceMeronym,
            SubstanceMeronym => SubstanceHolonym,
            PartHolonym => PartMeronym,
            PartMeronym => PartHolonym,
            DomainTopic => MemberOfDomainTopic,
            MemberOfDomainTopic => DomainTopic,
            DomainRegion => MemberOfDomainRegion,
            MemberOfDomainRegion => DomainRegion,
            DomainUsage => MemberOfDomainUsage,
            MemberOfDomainUsage => DomainUsage,
            Antonym | Attribute | AlsoSee | VerbGroup | SimilarTo | DerivationallyRelated => self,
            Entailment | Cause | Participle | Pertainym => return None,
        })
    }

    /// True for the upward taxonomy links.
    pub fn is_hypernymy(self) -> bool {
        matches!(self, Hypernym | InstanceHypernym)
    }
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationType {
    type Err = String;

    /// Accepts either the long name or the WNdb pointer symbol.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationType::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .or_else(|| RelationType::from_symbol(s))
            .ok_or_else(|| format!("unknown relation `{s}`"))
    }
}

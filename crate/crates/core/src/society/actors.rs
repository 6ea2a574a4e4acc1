use std::fmt;

/// Social weight of an actor, strongest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dominance {
    VeryDominating,
    Dominating,
    WeakDominating,
    VeryWeakDominating,
}

impl Dominance {
    /// Default egoist threshold. Stronger actors need more fear before they
    /// comply.
    pub fn default_lambda(self) -> f64 {
        match self {
            Dominance::VeryDominating => 0.6,
            Dominance::Dominating => 0.45,
            Dominance::WeakDominating => 0.3,
            Dominance::VeryWeakDominating => 0.15,
        }
    }

    pub fn stature(self) -> Stature {
        match self {
            Dominance::VeryDominating | Dominance::Dominating => Stature::Strong,
            Dominance::WeakDominating | Dominance::VeryWeakDominating => Stature::Weak,
        }
    }

    /// True when `self` is strictly stronger than `other`.
    pub fn dominates(self, other: Dominance) -> bool {
        self < other
    }
}

/// Two-way split of the dominance classes used by the norm rules: heavy
/// vehicles (trucks, buses) versus everyone else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stature {
    Strong,
    Weak,
}

/// Upper bound of a weight class in kg; `None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightRange {
    pub min_kg: f64,
    pub max_kg: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ActorKind {
    Truck,
    Bus,
    ToyotaSmallTruck,
    Carry,
    Car3000cc,
    Car2000cc,
    Rickshaw,
    Ambulance,
    Motorbike,
    Cycle,
}

impl ActorKind {
    pub const ALL: [ActorKind; 10] = [
        ActorKind::Truck,
        ActorKind::Bus,
        ActorKind::ToyotaSmallTruck,
        ActorKind::Carry,
        ActorKind::Car3000cc,
        ActorKind::Car2000cc,
        ActorKind::Rickshaw,
        ActorKind::Ambulance,
        ActorKind::Motorbike,
        ActorKind::Cycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActorKind::Truck => "AV_Truck",
            ActorKind::Bus => "AV_Bus",
            ActorKind::ToyotaSmallTruck => "AV_Toyota_Small_truck",
            ActorKind::Carry => "AV_Carry",
            ActorKind::Car3000cc => "AV_Car3000cc",
            ActorKind::Car2000cc => "AV_Car2000cc",
            ActorKind::Rickshaw => "AV_Rickshaw",
            ActorKind::Ambulance => "AV_Ambulance",
            ActorKind::Motorbike => "AV_Motorbike",
            ActorKind::Cycle => "AV_Cycle",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ActorKind::Truck => "T",
            ActorKind::Bus => "B",
            ActorKind::ToyotaSmallTruck => "TY",
            ActorKind::Carry => "C",
            ActorKind::Car3000cc => "CB",
            ActorKind::Car2000cc => "CS",
            ActorKind::Rickshaw => "R",
            ActorKind::Ambulance => "A",
            ActorKind::Motorbike => "M",
            ActorKind::Cycle => "CL",
        }
    }

    pub fn from_symbol(s: &str) -> Option<ActorKind> {
        Self::ALL.into_iter().find(|k| k.symbol() == s)
    }

    pub fn dominance(self) -> Dominance {
        use ActorKind::*;
        match self {
            Truck | Bus => Dominance::VeryDominating,
            ToyotaSmallTruck => Dominance::Dominating,
            Carry | Car3000cc | Car2000cc | Rickshaw | Ambulance => Dominance::WeakDominating,
            Motorbike | Cycle => Dominance::VeryWeakDominating,
        }
    }

    pub fn weight(self) -> WeightRange {
        let r = |min_kg, max_kg| WeightRange { min_kg, max_kg };
        match self {
            ActorKind::Truck => r(5000.0, None),
            ActorKind::Bus => r(4500.0, Some(50000.0)),
            ActorKind::ToyotaSmallTruck => r(3000.0, Some(4000.0)),
            ActorKind::Carry => r(2000.0, Some(2800.0)),
            ActorKind::Car3000cc => r(2000.0, Some(2500.0)),
            ActorKind::Car2000cc => r(1500.0, Some(1700.0)),
            ActorKind::Rickshaw => r(1200.0, Some(1400.0)),
            ActorKind::Ambulance => r(1200.0, Some(1400.0)),
            ActorKind::Motorbike => r(800.0, Some(1100.0)),
            ActorKind::Cycle => r(400.0, Some(400.0)),
        }
    }
}

impl fmt::Display for ActorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Egoist threshold per dominance class.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LambdaTable {
    pub very_dominating: f64,
    pub dominating: f64,
    pub weak_dominating: f64,
    pub very_weak_dominating: f64,
}

impl LambdaTable {
    pub fn get(&self, d: Dominance) -> f64 {
        match d {
            Dominance::VeryDominating => self.very_dominating,
            Dominance::Dominating => self.dominating,
            Dominance::WeakDominating => self.weak_dominating,
            Dominance::VeryWeakDominating => self.very_weak_dominating,
        }
    }

    pub fn values(&self) -> [(&'static str, f64); 4] {
        [
            ("lambda.very_dominating", self.very_dominating),
            ("lambda.dominating", self.dominating),
            ("lambda.weak_dominating", self.weak_dominating),
            ("lambda.very_weak_dominating", self.very_weak_dominating),
        ]
    }
}

impl Default for LambdaTable {
    fn default() -> Self {
        Self {
            very_dominating: Dominance::VeryDominating.default_lambda(),
            dominating: Dominance::Dominating.default_lambda(),
            weak_dominating: Dominance::WeakDominating.default_lambda(),
            very_weak_dominating: Dominance::VeryWeakDominating.default_lambda(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Personality {
    pub dominance: Dominance,
    /// Egoist threshold: willingness below this means the norm is ignored.
    pub lambda: f64,
    pub fear_threshold: Option<f64>,
}

impl Personality {
    pub fn for_kind(kind: ActorKind, lambdas: &LambdaTable) -> Self {
        let dominance = kind.dominance();
        Self {
            dominance,
            lambda: lambdas.get(dominance),
            fear_threshold: None,
        }
    }
}

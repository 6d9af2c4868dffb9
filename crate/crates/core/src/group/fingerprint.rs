use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::Group;
use crate::perm::lcm;

/// Cheap isomorphism invariants of a group.
///
/// Equal fingerprints are necessary, not sufficient, for isomorphism. The
/// enumeration-based fields are `None` when the order exceeds the cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    #[serde(serialize_with = "decimal")]
    pub order: BigUint,
    pub is_abelian: bool,
    #[serde(serialize_with = "decimal_list")]
    pub derived_series_orders: Vec<BigUint>,
    pub element_order_histogram: Option<BTreeMap<u64, u64>>,
    pub center_order: Option<u64>,
    pub exponent: Option<u64>,
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn decimal_list<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl Group {
    pub fn fingerprint(&self, cutoff: u64) -> GroupFingerprint {
        let derived_series_orders = self.derived_series().iter().map(|g| g.order()).collect();
        let mut fp = GroupFingerprint {
            order: self.order(),
            is_abelian: self.is_abelian(),
            derived_series_orders,
            element_order_histogram: None,
            center_order: None,
            exponent: None,
        };
        let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
        let enumerated = self.try_for_each_element(cutoff, |g| {
            *hist.entry(g.order()).or_insert(0) += 1;
            true
        });
        if enumerated.is_ok() {
            fp.exponent = Some(hist.keys().fold(1, |acc, &o| lcm(acc, o)));
            fp.element_order_histogram = Some(hist);
            fp.center_order = self.center(cutoff).ok().and_then(|z| z.order_u64());
        }
        fp
    }
}

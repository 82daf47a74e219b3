use crate::{Error, Result};

/// Gate-attached depolarizing noise plus readout bit flips.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NoiseModel {
    /// Per idle position per layer.
    pub p1: f64,
    /// Per model SU(4) gate.
    pub p2: f64,
    /// Per SWAP inserted by routing.
    pub p_swap: f64,
    /// Per measured bit.
    pub p_readout: f64,
}

impl NoiseModel {
    pub fn new(p1: f64, p2: f64, p_swap: f64, p_readout: f64) -> Result<Self> {
        let model = NoiseModel { p1, p2, p_swap, p_readout };
        model.validate()?;
        Ok(model)
    }

    pub fn ideal() -> Self {
        NoiseModel::default()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("p1", self.p1),
            ("p2", self.p2),
            ("p_swap", self.p_swap),
            ("p_readout", self.p_readout),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Domain(alloc::format!("{name} = {p} is not a probability")));
            }
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.p_swap == 0.0 && self.p_readout == 0.0
    }
}

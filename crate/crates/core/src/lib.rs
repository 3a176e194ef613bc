//! Multi-trial Guruswami-Sudan list decoding of GRS codes over prime fields.

pub mod bivariate;
pub mod code;
pub mod decoder;
pub mod error;
pub mod field;
pub mod interp;
pub mod params;
pub mod poly;
pub mod roots;
pub mod sim;
pub mod polymat;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/minimisation.md")]
    mod minimisation {}
    #[doc = include_str!("../../../book/src/microsteps.md")]
    mod microsteps {}
    #[doc = include_str!("../../../book/src/schedules.md")]
    mod schedules {}
    #[doc = include_str!("../../../book/src/reencoding.md")]
    mod reencoding {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/simulations.md")]
    mod simulations {}
}

//! Reduction modulo a prime, the finite image and the congruence kernel.

pub mod image;
pub mod site;
pub mod word;

pub use image::{enumerate_image, kernel_normal_generators, presentation, schreier_generators, FiniteImage, Presentation, SchreierGenerator, DEFAULT_BUDGET};
pub use site::{select_prime, valid_primes, CongruenceSite, PrimePolicy};
pub use word::{evaluate_word, Word};

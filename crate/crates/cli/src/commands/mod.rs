pub mod evaluate;
pub mod generate;
pub mod gradcheck;
pub mod preprocess;
pub mod train;
pub mod translate;

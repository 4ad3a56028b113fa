pub mod algebra;
pub mod bandmatrix;
pub mod families;
pub mod seqlab;
pub mod verify;

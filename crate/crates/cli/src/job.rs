use forge_core::group::{
    generated_group, group_of_lie_algebra, nilpotent_group, reductive_group_parts, semisimple_group, AlgebraicGroup,
    Limits,
};
use forge_core::lie::{reductive_decomposition, structure_constants, MatrixSpace};
use forge_core::Error;

use crate::error::CliError;
use crate::input::{format_matrices, parse_matrices};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    NilpotentGroup,
    SemisimpleGroup,
    GeneratedGroup,
    GroupFromLieAlgebra,
    ReductiveDecomposition,
    ReductiveGroupParts,
    TangentSpace,
}

impl Command {
    pub fn arity(self) -> usize {
        if self == Command::GeneratedGroup {
            2
        } else {
            1
        }
    }
}

/// One invocation: a command, the contents of its input files and the caps.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub inputs: Vec<String>,
    pub limits: Limits,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JobOutput {
    pub text: String,
    pub trace: Vec<String>,
}

fn output(text: String) -> JobOutput {
    JobOutput { text, trace: Vec::new() }
}

fn space_block(name: &str, s: &MatrixSpace) -> String {
    format!("[{name}] dim={}\n{}", s.dimension(), format_matrices(s.n(), &s.basis()))
}

pub fn run_job(spec: &JobSpec) -> Result<JobOutput, CliError> {
    let command = spec.command;
    if spec.inputs.len() != command.arity() {
        return Err(CliError::Usage(format!("{command:?} takes {} input file(s)", command.arity())));
    }
    let limits = &spec.limits;
    let input = &spec.inputs[0];
    let group = |text: &str| AlgebraicGroup::parse(text, &limits.groebner);
    Ok(match command {
        Command::NilpotentGroup => {
            let (n, basis) = parse_matrices(input)?;
            output(nilpotent_group(n, &basis, limits)?.serialize())
        }
        Command::SemisimpleGroup => {
            let (_, ms) = parse_matrices(input)?;
            let [x] = ms.as_slice() else {
                return Err(Error::parse("matrices", format!("expected exactly one matrix, found {}", ms.len())).into());
            };
            output(semisimple_group(x, limits)?.serialize())
        }
        Command::GeneratedGroup => {
            let g = generated_group(&group(input)?, &group(&spec.inputs[1])?, limits)?;
            JobOutput { text: g.group.serialize(), trace: g.trace }
        }
        Command::GroupFromLieAlgebra => {
            let (_, basis) = parse_matrices(input)?;
            let g = group_of_lie_algebra(&structure_constants(&basis)?, limits)?;
            JobOutput { text: g.group.serialize(), trace: g.trace }
        }
        Command::ReductiveDecomposition => {
            let (_, basis) = parse_matrices(input)?;
            let split = reductive_decomposition(&structure_constants(&basis)?)?;
            output([("l", &split.l), ("d", &split.d), ("n", &split.n)].iter().map(|(k, s)| space_block(k, s)).collect())
        }
        Command::ReductiveGroupParts => {
            let (_, basis) = parse_matrices(input)?;
            let (h, u) = reductive_group_parts(&structure_constants(&basis)?, limits)?;
            output(format!("[H]\n{}[U]\n{}", h.serialize(), u.serialize()))
        }
        Command::TangentSpace => {
            let g = group(input)?;
            output(format_matrices(g.n(), &g.tangent_space()?.basis()))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(command: Command, inputs: &[&str], limits: Limits) -> Result<JobOutput, CliError> {
        run_job(&JobSpec { command, inputs: inputs.iter().map(|s| s.to_string()).collect(), limits })
    }

    const ROTATION: &str = r#"{"n":2,"matrices":[[["0","1"],["-1","0"]]]}"#;
    const E12: &str = r#"{"n":2,"matrices":[[["0","1"],["0","0"]]]}"#;
    const HEISENBERG: &str =
        r#"{"n":3,"matrices":[[["0","1","0"],["0","0","0"],["0","0","0"]],[["0","0","0"],["0","0","1"],["0","0","0"]],[["0","0","1"],["0","0","0"],["0","0","0"]]]}"#;

    #[test]
    fn semisimple_example() {
        let out = run(Command::SemisimpleGroup, &[ROTATION], Limits::default()).unwrap();
        assert_eq!(out.text, "n=2\nx_1_2 + x_2_1\nx_1_1 - x_2_2\nx_2_1^2 + x_2_2^2 - 1\n");
    }

    #[test]
    fn nilpotent_example() {
        let out = run(Command::NilpotentGroup, &[E12], Limits::default()).unwrap();
        assert_eq!(out.text.lines().count(), 4);
        assert!(out.text.lines().skip(1).all(|l| !l.contains('^') && !l.contains('*')));
    }

    #[test]
    fn spair_cap() {
        let mut l = Limits::default();
        l.groebner.max_spairs = 1;
        let err = run(Command::NilpotentGroup, &[HEISENBERG], l).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.report().contains("S-pair cap"));
    }

    #[test]
    fn arity_and_domain_errors() {
        assert_eq!(run(Command::GeneratedGroup, &[E12], Limits::default()).unwrap_err().exit_code(), 1);
        let two = r#"{"n":2,"matrices":[[["1","0"],["0","2"]],[["0","1"],["0","0"]]]}"#;
        assert_eq!(run(Command::SemisimpleGroup, &[two], Limits::default()).unwrap_err().exit_code(), 1);
        assert_eq!(run(Command::SemisimpleGroup, &[E12], Limits::default()).unwrap_err().exit_code(), 1);
    }
}

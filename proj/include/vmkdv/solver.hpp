#pragma once

#include "vmkdv/assembly.hpp"
#include "vmkdv/banded.hpp"

#include <stdexcept>

namespace vmkdv {

struct SingularBlockSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SolverKind { Banded, SparseLU };

/// Direct solver for the Newton block system. The production path eliminates
/// the W unknowns exactly (their rows and the U-equation rows carry the same
/// mass matrix, so M dW cancels algebraically), leaving a cyclic-banded system
/// over (dU, dV, dP) handled by ArrowBandSolver; dW is recovered with the
/// prefactored mass. The SparseLU path factors the full 3dN+1 arrow matrix
/// and is kept as the reference implementation for testing.
class BlockSolver {
public:
    explicit BlockSolver(SpacePtr space, int d, SolverKind kind = SolverKind::Banded);

    /// Newton update, negated-residual convention: state + update is the next
    /// iterate. Throws SingularBlockSystem when the factorization breaks down.
    Eigen::VectorXd solve(const BlockSystem& sys);

    SolverKind kind() const { return kind_; }

private:
    Eigen::VectorXd solve_banded(const BlockSystem& sys);
    Eigen::VectorXd solve_sparse_lu(const BlockSystem& sys);

    SpacePtr space_;
    int d_;
    SolverKind kind_;
    ArrowBandSolver arrow_;
    Eigen::VectorXd work_;
};

/// One-shot solve with the production path.
Eigen::VectorXd solve_block(const BlockSystem& sys, const SpacePtr& space);
/// One-shot solve with the reference path (full sparse factorization).
Eigen::VectorXd solve_block_reference(const BlockSystem& sys, const SpacePtr& space);

} // namespace vmkdv

#pragma once

#include <cstddef>
#include <cstdint>

// Numeric defaults shared by the library and the command-line tool.
// Command-line flags override these; nothing is read from the environment.
namespace ncg::defaults {

// numerics
inline constexpr double svd_zero_relative = 1e-12;  // sigma < this * sigma_max counts as zero
inline constexpr double hermitian_tolerance = 1e-9;

// clifford
inline constexpr std::size_t dense_generator_cap = 4096;   // max 2^ceil(n/2)
inline constexpr std::uint64_t phase_enumeration_cap = 1u << 20;
inline constexpr double radicand_guard = 1e-14;
inline constexpr std::size_t materialize_max_n = 3;

// commutative
inline constexpr std::uint64_t sign_enumeration_cap = 1u << 20;

// reduction
inline constexpr double decoder_eps = 0.3;
inline constexpr double subspace_rank_relative = 1e-9;
inline constexpr double membership_tolerance = 1e-10;
inline constexpr double completeness_slack = 1e-6;
inline constexpr std::size_t ascent_restarts = 16;
inline constexpr std::size_t ascent_iterations = 200;

// solvers
inline constexpr std::size_t ncg_restarts = 32;
inline constexpr std::size_t ncg_iterations = 200;
inline constexpr double ncg_tolerance = 1e-10;
inline constexpr std::size_t lift_cap = 1u << 20;  // n * d^2

// file formats
inline constexpr int file_version = 1;

}  // namespace ncg::defaults

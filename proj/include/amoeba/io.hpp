#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "amoeba/core.hpp"
#include "amoeba/solver.hpp"
#include "amoeba/verify.hpp"

namespace amoeba::io {

// JSON text forms. Parsers throw InputError with the offending field path.
SolutionSet parse_solutions(const std::string& text);
std::string format_solutions(const SolutionSet& sols);
PolynomialSystem parse_system(const std::string& text);
std::string format_system(const PolynomialSystem& sys);
AmoebaBasis parse_basis(const std::string& text);
std::string format_basis(const AmoebaBasis& basis);

SolutionSet load_solutions(const std::filesystem::path& path);
void dump_solutions(const SolutionSet& sols, const std::filesystem::path& path);
PolynomialSystem load_system(const std::filesystem::path& path);
AmoebaBasis load_basis(const std::filesystem::path& path);
void dump_basis(const AmoebaBasis& basis, const std::filesystem::path& path);

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first
};

/// Shades each grid node by the intersection margin of `generators`
/// (members black, light with growing margin, faint contour bands every
/// 0.5 log units) and marks `marks` in red. Requires n = 2; the grid's
/// resolution is the image size along both axes and u_2 increases upward.
Image render_amoeba_2d(std::span<const ArrangementPoly> generators, const GridSpec& grid,
                       std::span<const LogPoint> marks = {});
std::string encode_ppm(const Image& img);
void write_ppm(const Image& img, const std::filesystem::path& path);

}  // namespace amoeba::io

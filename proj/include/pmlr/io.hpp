#pragma once

// Versioned text containers for gridded datasets and fitted PMLR models.
//
// Numbers are written in the shortest form that parses back to the same
// double, so write → read → write reproduces the file byte for byte.
//
// Dataset file (breakpoints in the units named on each axis line, degrees
// for angles; limits in degrees and degrees per second):
//
//   pmlr-dataset 1
//   # node order: row-major over the listed axes (last axis varies fastest)
//   surfaces 10
//   surface d1 -30 30 150          name, min, max, rate
//   ...
//   tables 9
//   table ca
//   axes 2
//   axis alpha deg 7 -5 0 5 10 15 20 25
//   axis beta deg 5 -10 -5 0 5 10
//   outputs 3 Cl Cm Cn
//   nodes 35
//   <m values for node 0>
//   ...
//   end
//
// Model file:
//
//   pmlr-model 1
//   models 1
//   model flap1
//   axes 2
//   axis delta deg 7 ...
//   axis alpha deg 7 ...
//   outputs 3 dCl dCm dCn
//   gamma 3 49
//   <49 values of row 0>
//   ...
//   end

#include "pmlr/airframe.hpp"
#include "pmlr/pmlr.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pmlr::io {

inline constexpr int kDatasetVersion = 1;
inline constexpr int kModelVersion = 1;

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

/// Parses a full token as a double; throws FormatError otherwise.
double parse_double(std::string_view token);

struct NamedModel {
    std::string name;
    std::vector<std::string> outputs;
    PmlrModel model;

    bool operator==(const NamedModel&) const = default;
};

void write_dataset(std::ostream& os, const airframe::AeroDataset& data);
airframe::AeroDataset read_dataset(std::istream& is);

void write_models(std::ostream& os, const std::vector<NamedModel>& models);
std::vector<NamedModel> read_models(std::istream& is);

airframe::AeroDataset load_dataset(const std::filesystem::path& path);
void save_dataset(const std::filesystem::path& path, const airframe::AeroDataset& data);
std::vector<NamedModel> load_models(const std::filesystem::path& path);
void save_models(const std::filesystem::path& path, const std::vector<NamedModel>& models);

}  // namespace pmlr::io

#pragma once

// JSON file formats for every artifact the command line reads or writes.
// Integers and rationals are written exactly (strings once they outgrow 64
// bits); words and algebra elements use their literal syntax.

#include "nctoric/azumaya.hpp"
#include "nctoric/deltasystem.hpp"
#include "nctoric/sheaves.hpp"

#include "json.hpp"

#include <string>

namespace nctoric::io {

using nlohmann::json;

/// Throws ParseError with line and column on malformed JSON.
json parse_json_text(const std::string& text, const std::string& origin);
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
std::string base_dir_of(const std::string& path);

/// "{0,1}" <-> {0,1}; "{}" is the zero cone.
ConeId parse_cone(const std::string& key);

RawFan raw_fan_from_json(const json& j);
Fan fan_from_json(const json& j);
json fan_to_json(const Fan& fan);

/// Either an inline object or a path relative to base_dir.
Fan fan_ref_from_json(const json& j, const std::string& base_dir);

ConeWords cone_words_from_json(const json& j, int rank);
json cone_words_to_json(const ConeWords& w);

/// Accepts a built system ("charts") or a build recipe ("lifts", "extras").
AdmissibleSystem system_from_json(const json& j, const std::string& base_dir = ".");
json system_to_json(const AdmissibleSystem& sys);

/// {"coefficients": {"2": 1}} with missing rays 0, or a plain list.
DivisorData divisor_from_json(const json& j, const Fan& fan);
json divisor_to_json(const DivisorData& d);

GluingData gluing_from_json(const json& j, int rank);
json gluing_to_json(const GluingData& g);

Sheaf sheaf_from_json(const json& j, const std::string& base_dir = ".");
json sheaf_to_json(const Sheaf& s);

TwistedSection section_from_json(const json& j, const std::string& base_dir = ".");
json section_to_json(const TwistedSection& s);

struct Subscheme {
  AdmissibleSystem system;
  SubschemeIdeals ideals;
};
Subscheme subscheme_from_json(const json& j, const std::string& base_dir = ".");
json subscheme_to_json(const Subscheme& s);

/// Row-major list of Gaussian-rational entries.
QIMatrix matrix_from_json(const json& j, int r);
json matrix_to_json(const QIMatrix& m);

MorphismData morphism_from_json(const json& j, const std::string& base_dir = ".");
json morphism_to_json(const MorphismData& m);

}  // namespace nctoric::io

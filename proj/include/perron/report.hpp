#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perron/generators.hpp"
#include "perron/growth.hpp"
#include "perron/harness.hpp"
#include "perron/perron_structure.hpp"
#include "perron/spectrum.hpp"

namespace perron {

inline constexpr const char* kAnalysisSchema = "perron.analysis/1";
inline constexpr const char* kVerdictSchema = "perron.verdict/1";
inline constexpr const char* kGeneratorSchema = "perron.generator/1";
inline constexpr const char* kToolVersion = "0.1.0";

struct AnalysisReport {
    std::string schema = kAnalysisSchema;
    std::string tool_version = kToolVersion;
    std::string input_digest;            // FNV-1a of the input bytes
    Norm norm_choice = Norm::inf;
    bool spectral_only = false;          // --allow-general: no positivity-based sections
    SpectrumReport spectrum;
    std::optional<IrreducibilityReport> irreducibility;
    std::optional<CyclicityResult> cyclicity;
    std::vector<BoundednessVerdict> boundedness;   // evaluated on T / r(T)
    std::map<std::string, double> tolerances;
    std::map<std::string, double> grid;
    std::vector<std::string> notes;

    bool operator==(const AnalysisReport&) const = default;
};

/// One line of JSON. Non-finite doubles are written as "inf", "-inf" or "nan".
std::string serialize(const AnalysisReport& report);
AnalysisReport parse_analysis_report(const std::string& text);

std::string serialize(const TheoremVerdict& verdict);
TheoremVerdict parse_verdict(const std::string& text);

std::string serialize(const GeneratorSpec& spec);
GeneratorSpec parse_generator_spec(const std::string& text);

}  // namespace perron

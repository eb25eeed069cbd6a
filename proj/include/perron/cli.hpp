#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "perron/report.hpp"

namespace perron::cli {

enum Exit : int {
    ok = 0,
    conclusion_fails = 1,
    usage = 2,
    negativity = 3,
    numerical = 4,
    precondition = 5,
    not_applicable = 10,
};

struct AnalyzeOptions {
    bool allow_general = false;
    int power_horizon = 256;
    int abel_n_max = 26;
    SpectrumOptions spectrum;
    CyclicityOptions cyclicity;
};

/// Spectrum, irreducibility, cyclicity and boundedness of one operator.
AnalysisReport analyze(const PositiveOperator& t, const std::string& input_digest, const AnalyzeOptions& options = {});

/// 0 when the conclusion holds (or holds one-sidedly), 1 when it fails,
/// 10 when a hypothesis failed.
int exit_code(const TheoremVerdict& verdict);

const std::vector<std::string>& theorem_ids();

/// Entry point of the `perron` tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perron::cli

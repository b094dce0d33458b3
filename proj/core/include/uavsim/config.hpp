#pragma once

#include <string>

#include "uavsim/env.hpp"
#include "uavsim/trainer.hpp"

namespace uavsim {

struct RunConfig {
    EnvConfig env;
    TrainConfig train;
};

// Line-oriented `key = value` format with bracketed sections [env] and
// [train]. Blank lines and '#' comments are ignored. Unknown sections, keys,
// and malformed lines are rejected with the offending line number; an empty
// file yields the full defaults. dump_config(parse_config_text(s)) is the
// identity on dumped strings.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);
std::string dump_config(const RunConfig& config);

}  // namespace uavsim

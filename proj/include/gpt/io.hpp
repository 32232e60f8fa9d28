#pragma once

#include <memory>
#include <string>

#include "gpt/theories.hpp"

namespace gpt {

/// Theory-file serialization. Schema version 1; rationals travel as exact
/// "num/den" strings; key order is fixed so emissions are byte-stable.
std::string theory_to_json(const Theory& theory);

/// Parse and fully validate a theory file (layout, V-rep/H-rep consistency,
/// measurements, optional explicit transform group). Throws ParseError for
/// malformed input and ValidationError for inconsistent content.
std::shared_ptr<Theory> theory_from_json(const std::string& text);

std::shared_ptr<Theory> load_theory_file(const std::string& path);
void save_theory_file(const Theory& theory, const std::string& path);

/// Name or file path: built-in names win, otherwise treat as a path.
std::shared_ptr<Theory> resolve_theory(const std::string& name_or_path);

}  // namespace gpt

// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qsim/error.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace qsim
{
//---------------------------------------------------------------------------//
/*!
 * Semantic violation in a scenario or flow definition.
 *
 * The offending key is carried separately so diagnostics can name it.
 */
class ConfigError : public std::invalid_argument
{
  public:
    ConfigError(std::string key, std::string const& what)
        : std::invalid_argument("invalid '" + key + "': " + what)
        , key_(std::move(key))
    {
    }

    std::string const& key() const noexcept { return key_; }

  private:
    std::string key_;
};

//! Malformed input text (not parseable as the expected format).
class SyntaxError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! File system failure; the message names the path.
class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//---------------------------------------------------------------------------//
}  // namespace qsim

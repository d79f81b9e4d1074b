/*
 *   Copyright 2026 The dmnn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace dmnn {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (e.g. a set that is
/// not contained in the window it is evaluated on).
class DomainError : public Error {
public:
	using Error::Error;
};

class WindowMismatch : public Error {
public:
	using Error::Error;
};

/// A window is too large for an exhaustive (truth-table) representation.
class WindowCapExceeded : public Error {
public:
	WindowCapExceeded(std::size_t size, std::size_t cap)
	: Error("window cap exceeded: |W| = " + std::to_string(size) +
	        " > " + std::to_string(cap)),
	  m_size(size), m_cap(cap)
	{}

	std::size_t size() const { return m_size; }
	std::size_t cap() const { return m_cap; }

private:
	std::size_t m_size;
	std::size_t m_cap;
};

class InvalidInterval : public Error {
public:
	using Error::Error;
};

class ParseError : public Error {
public:
	using Error::Error;
};

/// Configuration or shape mismatch between an architecture and its inputs.
class ConfigError : public Error {
public:
	using Error::Error;
};

/// Malformed or missing data files.
class DataError : public Error {
public:
	using Error::Error;
};

} // namespace dmnn

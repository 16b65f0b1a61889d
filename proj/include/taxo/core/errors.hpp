// Copyright 2026 The taxo-expand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace taxo {

// Base of every error raised by the library. The CLI maps subclasses onto
// process exit codes (see tools/taxo_cli.cpp).
class TaxoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public TaxoError {
 public:
  using TaxoError::TaxoError;
};

// Input data that cannot be ingested (bad rows, missing files).
class DataError : public TaxoError {
 public:
  using TaxoError::TaxoError;
};

class MalformedTaxonomy : public DataError {
 public:
  using DataError::DataError;
};

class UnknownEntity : public DataError {
 public:
  using DataError::DataError;
};

class DuplicateEntity : public DataError {
 public:
  using DataError::DataError;
};

// Embedding provider could not be reached. Retryable.
class EmbeddingServiceUnavailable : public TaxoError {
 public:
  using TaxoError::TaxoError;
};

// Vectors from different models or dimensions were mixed.
class ProviderMismatch : public TaxoError {
 public:
  using TaxoError::TaxoError;
};

// Raised by chat backends for failures worth retrying (timeouts, 429, 5xx).
class TransientBackendError : public TaxoError {
 public:
  using TaxoError::TaxoError;
};

// Retries exhausted.
class BackendUnavailable : public TaxoError {
 public:
  using TaxoError::TaxoError;
};

class AuthError : public TaxoError {
 public:
  using TaxoError::TaxoError;
};

class ContextOverflow : public TaxoError {
 public:
  using TaxoError::TaxoError;
};

// A mock backend received a request none of its fixtures match.
class MockMiss : public TaxoError {
 public:
  using TaxoError::TaxoError;
};

}  // namespace taxo

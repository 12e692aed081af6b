#pragma once

#include <stdexcept>
#include <string>

namespace tfano {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// class vector has the wrong length or group literal is bad
class MalformedClassError : public Error { public: using Error::Error; };
class GroupMismatchError : public Error { public: using Error::Error; };
class SizeLimitError : public Error { public: using Error::Error; };
class InvalidClassError : public Error { public: using Error::Error; };
class InvalidGermError : public Error { public: using Error::Error; };
class InconsistentLocalOrderError : public Error { public: using Error::Error; };
// a replicate/membership question needs a box the table doesn't have
class TableIncompleteError : public Error { public: using Error::Error; };
class NotAMatchError : public Error { public: using Error::Error; };
class InconsistentSeriesError : public Error { public: using Error::Error; };
class BasketDegreeInconsistencyError : public Error { public: using Error::Error; };
class CharacterInconsistencyError : public Error { public: using Error::Error; };
class EmptyLinearSystemError : public Error { public: using Error::Error; };
class CatalogError : public Error { public: using Error::Error; };

} // namespace tfano

#pragma once

#include <stdexcept>
#include <string>

namespace ctheta {

// Every library failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NotAGroup : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class CorruptTable : public Error {
public:
    using Error::Error;
};

class NeedsIrreps : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class WrongFormulation : public Error {
public:
    using Error::Error;
};

class SizeLimit : public Error {
public:
    using Error::Error;
};

class NotTransitive : public Error {
public:
    using Error::Error;
};

class NotAutomorphism : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace ctheta

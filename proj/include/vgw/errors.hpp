#pragma once

#include <stdexcept>
#include <string>

namespace vgw {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error { public: using Error::Error; };
class ScopeError : public Error { public: using Error::Error; };
class WindowError : public Error { public: using Error::Error; };
class SeriesError : public Error { public: using Error::Error; };
class ResidueError : public Error { public: using Error::Error; };
class ReconstructionError : public Error { public: using Error::Error; };
class CacheError : public Error { public: using Error::Error; };

} // namespace vgw

#include "nscartan/rational.hpp"

#include <ostream>

namespace nscartan {

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace nscartan

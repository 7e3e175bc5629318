#include "mpfa/counting.hpp"

namespace mpfa::detail {

OpCount*& active_ledger() {
    thread_local OpCount* ledger = nullptr;
    return ledger;
}

} // namespace mpfa::detail

#include "placesim/errors.hpp"

#include <sstream>

namespace placesim {

namespace {

std::string unstable_message(double service_time, double arrival_rate)
{
    std::ostringstream os;
    os << "unstable queue: utilization " << service_time * arrival_rate
       << " (service " << service_time << " s, arrival rate " << arrival_rate << " Hz) is not below 1";
    return os.str();
}

}  // namespace

UnstableQueueError::UnstableQueueError(double service_time, double arrival_rate)
    : Error(unstable_message(service_time, arrival_rate)),
      utilization_(service_time * arrival_rate)
{
}

}  // namespace placesim

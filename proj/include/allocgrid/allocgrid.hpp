#pragma once

#include "allocgrid/allocation.hpp"
#include "allocgrid/bigint.hpp"
#include "allocgrid/binomial.hpp"
#include "allocgrid/bounds.hpp"
#include "allocgrid/oracle.hpp"
#include "allocgrid/rational.hpp"
#include "allocgrid/symmetric.hpp"

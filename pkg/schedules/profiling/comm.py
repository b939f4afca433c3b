__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'


def comm_cost(size, src, dst, params):
    """
    Time to move a tensor between two endpoints: RPC overhead, piecewise
    linear in the size with a break at 1 MiB, plus the transfer through
    main memory.

    @type  size: int
    @param size: tensor size in bytes
    @type  params: L{CommCostParams}

    @rtype: float
    @return: microseconds
    """

    if size < 0:
        raise ValueError('tensor size must not be negative')
    if src == dst:
        return 0.0
    return params.rpc(size) + size / params.bandwidth * 1e6


def quant_cost(size, throughput):
    return size / throughput

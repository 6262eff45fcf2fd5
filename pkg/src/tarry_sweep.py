"""
Tarry sweep - runs the orthogonal-mate search over every reduced Latin square
of a given order and aggregates the counts
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from errors import MubGeoError
from latin import DEFAULT_MATE_ORDER_CAP, DEFAULT_REDUCED_ORDER_CAP, enumerate_reduced_squares, find_orthogonal_mate

Rows = List[List[int]]


def search_chunk(squares: Sequence[Rows], max_order: int = DEFAULT_MATE_ORDER_CAP) -> Dict:
    """
    Mate search over a batch of squares (runs inside worker processes)

    Returns:
        Dictionary with counts and the first square that has a mate
    """
    mates = 0
    transversal_free = 0
    exhaustive = True
    first_mate: Optional[Tuple[Rows, Rows]] = None

    for rows in squares:
        result = find_orthogonal_mate(rows, max_order=max_order)
        exhaustive = exhaustive and result.exhaustive
        if result.transversals == 0:
            transversal_free += 1
        if result.found:
            mates += 1
            if first_mate is None:
                first_mate = (rows, result.mate.cells.tolist())

    return {
        'examined': len(squares),
        'mates': mates,
        'transversal_free': transversal_free,
        'exhaustive': exhaustive,
        'first_mate': first_mate,
    }


class TarrySweep:
    """Exhaustive orthogonal-mate census over reduced Latin squares"""

    def __init__(self, config: Optional[Dict] = None):
        """
        Initialize the sweep

        Args:
            config: Configuration dictionary (uses the 'tarry' and 'limits' sections)
        """
        config = config or {}
        tarry = config.get('tarry', {})
        limits = config.get('limits', {})

        self.logger = logging.getLogger(__name__)
        self.default_order = tarry.get('default_order', 6)
        self.jobs = tarry.get('jobs') or os.cpu_count() or 1
        self.chunk_size = tarry.get('chunk_size', 256)
        self.reduced_order_cap = limits.get('reduced_order_cap', DEFAULT_REDUCED_ORDER_CAP)
        self.mate_order_cap = limits.get('mate_order_cap', DEFAULT_MATE_ORDER_CAP)

    def _chunks(self, order: int):
        chunk: List[Rows] = []
        for square in enumerate_reduced_squares(order, max_order=self.reduced_order_cap):
            chunk.append(square.cells.tolist())
            if len(chunk) == self.chunk_size:
                yield chunk
                chunk = []
        if chunk:
            yield chunk

    def run(self, order: Optional[int] = None, jobs: Optional[int] = None, progress: bool = True) -> Dict:
        """
        Search for an orthogonal mate of every reduced square of the order

        Args:
            order: Latin square order (default from config)
            jobs: Worker processes; 1 runs in-process
            progress: Show a tqdm bar

        Returns:
            Dictionary with squares_examined, mates_found, transversal_free_squares
            and the first square (in enumeration order) that has a mate
        """
        order = order if order is not None else self.default_order
        if order < 2:
            raise MubGeoError(f"Tarry sweep needs order >= 2, got {order}")
        jobs = jobs or self.jobs
        chunks = list(self._chunks(order))
        total = sum(len(chunk) for chunk in chunks)
        self.logger.info(f"Tarry sweep: order {order}, {total} reduced squares, {jobs} job(s)")

        results: Dict[int, Dict] = {}
        with tqdm(total=total, desc=f"Order {order} mate search", disable=not progress) as bar:
            if jobs == 1:
                for index, chunk in enumerate(chunks):
                    results[index] = search_chunk(chunk, self.mate_order_cap)
                    bar.update(len(chunk))
            else:
                with ProcessPoolExecutor(max_workers=jobs) as executor:
                    futures = {
                        executor.submit(search_chunk, chunk, self.mate_order_cap): index
                        for index, chunk in enumerate(chunks)
                    }
                    for future in as_completed(futures):
                        index = futures[future]
                        results[index] = future.result()
                        bar.update(results[index]['examined'])

        ordered = [results[index] for index in sorted(results)]
        first_mate = next((r['first_mate'] for r in ordered if r['first_mate'] is not None), None)

        summary = {
            'order': order,
            'squares_examined': sum(r['examined'] for r in ordered),
            'mates_found': sum(r['mates'] for r in ordered),
            'transversal_free_squares': sum(r['transversal_free'] for r in ordered),
            'exhaustive': all(r['exhaustive'] for r in ordered),
            'first_mate': {'square': first_mate[0], 'mate': first_mate[1]} if first_mate else None,
        }
        self.logger.info(
            f"Tarry sweep finished: {summary['squares_examined']} squares, {summary['mates_found']} with mates")
        return summary

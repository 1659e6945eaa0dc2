import logging
import os
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import List, Optional

import numpy as np
import pandas as pd
import psutil

from tracederiv.base import Link
from tracederiv.logging import LOG_FORMAT


@dataclass(kw_only=True)
class PartitionProcessorBase(Link):
    """Base class for links that split a sweep table into partitions"""

    partition_size: Optional[int] = field(default=None)
    num_partitions: Optional[int] = field(default=None)

    def __post_init__(self):
        super().__post_init__()
        if self.partition_size is not None and self.num_partitions is not None:
            raise ValueError(
                "Specify either 'partition_size' or 'num_partitions', not both."
            )

    def _partition(self, df: pd.DataFrame) -> List[pd.DataFrame]:
        if self.partition_size is not None:
            count = len(df) // self.partition_size + 1
        elif self.num_partitions is not None:
            count = self.num_partitions
        else:
            raise ValueError("Specify either 'partition_size' or 'num_partitions'.")
        count = max(1, min(count, len(df)))
        self.logger.debug(f"Partitioning {len(df)} rows into {count} partitions")
        # positional split keeps the original index on every partition
        return [df.iloc[chunk] for chunk in np.array_split(np.arange(len(df)), count)]


class SafePoolLinkMapper:
    """Carries a link into worker processes as its parameter dict"""

    def __init__(self, link: Link):
        self.config = link.get_params()

    def apply(self, df: pd.DataFrame) -> pd.DataFrame:
        logging.basicConfig(format=LOG_FORMAT)
        link = Link.from_params(self.config)
        link.logger.debug(f"Processing {len(df)} rows in process {os.getpid()}")
        return link(df)


@dataclass
class ParallelPartitionProcessor(PartitionProcessorBase):
    """Runs a link over partitions of the dataframe in a process pool

    Derivative sweeps are independent per row, so the partitions are processed
    with Pool.map and concatenated in their original order."""

    link: Link
    num_processes: int = psutil.cpu_count(logical=False) or 1

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        if df.empty:
            return self.link(df)
        partitions = self._partition(df)
        mapper = SafePoolLinkMapper(self.link)
        self.logger.debug(
            f"Processing {len(partitions)} partitions in {self.num_processes} processes"
        )
        with Pool(self.num_processes) as pool:
            processed = pool.map(mapper.apply, partitions)
        return pd.concat(processed)


@dataclass
class SerialPartitionProcessor(PartitionProcessorBase):
    """Runs a link over partitions of the dataframe one after another

    Bounds the size of the intermediate state sets of the engines to one partition at a time."""

    link: Link

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        if df.empty:
            return self.link(df)
        partitions = self._partition(df)
        processed = []
        while partitions:
            partition = partitions.pop(0)
            processed.append(self.link(partition))
            self.logger.debug(
                f"Processed partition {len(processed)}, {len(partitions)} remaining"
            )
        return pd.concat(processed)

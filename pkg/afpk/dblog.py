##################################################################
# Copyright 2026 AFPK developers and others                      #
# licensed under MIT, Please consult LICENSE.txt for details     #
##################################################################

"""
Run ledger: one row per experiment run in a SQLAlchemy database
"""

import datetime
import logging
import os
import uuid as uuidlib
from multiprocessing import Lock

import sqlalchemy
from sqlalchemy import Column, DateTime, Integer, String, VARCHAR
from sqlalchemy.orm import declarative_base, sessionmaker
from sqlalchemy.pool import NullPool, StaticPool

from afpk import __version__, configuration
from afpk.exceptions import ConfigurationError
from afpk.response.status import RUN_STATUS

LOGGER = logging.getLogger('AFPK')
_SESSION_MAKER = None

_tableprefix = configuration.get_config_value('logging', 'prefix')

Base = declarative_base()

lock = Lock()


class RunInstance(Base):
    __tablename__ = '{}runs'.format(_tableprefix)

    uuid = Column(VARCHAR(255), primary_key=True, nullable=False)
    pid = Column(Integer, nullable=False)
    kind = Column(VARCHAR(30), nullable=False)
    config_hash = Column(VARCHAR(64), nullable=False)
    version = Column(VARCHAR(16), nullable=False)
    time_start = Column(DateTime(), nullable=False)
    time_end = Column(DateTime(), nullable=True)
    status = Column(Integer, nullable=True)
    exit_code = Column(Integer, nullable=True)
    message = Column(String, nullable=True)


def log_run(kind, config_hash, uuid=None):
    """Insert a run in status STARTED

    :returns: the run uuid
    """

    uuid = str(uuid or uuidlib.uuid1())
    session = get_session()
    run = RunInstance(
        uuid=uuid, pid=os.getpid(), kind=kind, config_hash=config_hash, version=__version__,
        time_start=datetime.datetime.now(), status=RUN_STATUS.STARTED)
    session.add(run)
    session.commit()
    session.close()
    return uuid


def store_status(uuid, status, exit_code=None, message=None):
    """Update the status of a run
    """
    session = get_session()

    runs = session.query(RunInstance).filter_by(uuid=str(uuid))
    if runs.count():
        run = runs.one()
        run.time_end = datetime.datetime.now()
        run.message = None if message is None else str(message)
        run.status = status
        run.exit_code = exit_code
        session.commit()
    session.close()


def get_run(uuid):
    """Return the ledger row of a run as a dict, None if unknown"""

    session = get_session()
    run = session.query(RunInstance).filter_by(uuid=str(uuid)).first()
    result = None
    if run:
        result = {column.name: getattr(run, column.name) for column in RunInstance.__table__.columns}
    session.close()
    return result


def get_run_counts():
    """(finished, unfinished) run counts"""

    session = get_session()
    finished = session.query(RunInstance).filter(RunInstance.time_end.isnot(None)).count()
    unfinished = session.query(RunInstance).filter(RunInstance.time_end.is_(None)).count()
    session.close()
    return finished, unfinished


def get_session():
    """Get Connection for database
    """
    LOGGER.debug('Initializing database connection')
    global _SESSION_MAKER

    if _SESSION_MAKER:
        return _SESSION_MAKER()

    with lock:
        database = configuration.get_config_value('logging', 'database')
        echo = True
        level = configuration.get_config_value('logging', 'level')
        level_name = logging.getLevelName(level)
        if isinstance(level_name, int) and level_name >= logging.INFO:
            echo = False
        try:
            if ":memory:" in database:
                engine = sqlalchemy.create_engine(database,
                                                  echo=echo,
                                                  connect_args={'check_same_thread': False},
                                                  poolclass=StaticPool)
            elif database.startswith("sqlite"):
                engine = sqlalchemy.create_engine(database,
                                                  echo=echo,
                                                  connect_args={'check_same_thread': False},
                                                  poolclass=NullPool)
            else:
                engine = sqlalchemy.create_engine(database, echo=echo, poolclass=NullPool)
        except sqlalchemy.exc.SQLAlchemyError as e:
            raise ConfigurationError("Could not connect to database: {}".format(e), locator='logging.database')

        Session = sessionmaker(bind=engine)
        RunInstance.metadata.create_all(engine)

        _SESSION_MAKER = Session

    return _SESSION_MAKER()

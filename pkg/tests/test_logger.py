import unittest
import io
import logging
import os
import sys
import tempfile

# Add src to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.utils.logger import LogManager, PACKAGE_LOGGER, status


class TestLogManager(unittest.TestCase):

    def setUp(self):
        LogManager.reset(PACKAGE_LOGGER)
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        LogManager.reset(PACKAGE_LOGGER)
        self.tmp.cleanup()

    def test_child_loggers_reach_file(self):
        log_file = os.path.join(self.tmp.name, 'logs', 'stego.log')
        LogManager.configure({'logging': {'level': 'debug', 'log_file': log_file, 'console': False}})
        logging.getLogger('stego.engine').debug("embedded 12 bits")
        for handler in logging.getLogger(PACKAGE_LOGGER).handlers:
            handler.flush()
        with open(log_file, encoding='utf-8') as f:
            line = f.read()
        self.assertIn("[stego.engine] [DEBUG] embedded 12 bits", line)

    def test_handlers_not_duplicated(self):
        first = LogManager.get_logger(PACKAGE_LOGGER, console=True)
        second = LogManager.get_logger(PACKAGE_LOGGER, console=True)
        self.assertIs(first, second)
        self.assertEqual(len(first.handlers), 1)

    def test_reconfigure_replaces_handlers(self):
        LogManager.configure({'logging': {'level': 'INFO', 'log_file': '', 'console': True}})
        logger = LogManager.configure({'logging': {'level': 'WARNING', 'log_file': '', 'console': True}})
        self.assertEqual(len(logger.handlers), 1)
        self.assertEqual(logger.level, logging.WARNING)

    def test_status_line(self):
        stream = io.StringIO()
        status(stream, "[OK] done")
        self.assertIn("[OK] done", stream.getvalue())


if __name__ == '__main__':
    unittest.main()
